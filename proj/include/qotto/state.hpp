#pragma once

#include <complex>

#include "qotto/errors.hpp"

// Thermodynamic state of a harmonic working medium, tracked through the
// closed observable set (<H>, <L>, <D>) plus the instantaneous frequency.
// Natural units throughout: hbar = k_B = m = 1.

namespace qotto {

struct StateVector {
    double energy = 0.0;       // <H>
    double lagrangian = 0.0;   // <L> = <P^2/2m - m w^2 Q^2/2>
    double correlation = 0.0;  // <D> = <QP + PQ>
    double omega = 1.0;        // oscillator frequency the observables refer to
};

/// Parameters (beta, gamma) of the product form
/// rho = e^{gamma a^2} e^{-beta H} e^{gamma* a+^2} / Z.
struct GaussianParams {
    double beta = 1.0;                      // > 0
    std::complex<double> gamma{0.0, 0.0};   // 4|gamma|^2 < (e^{beta w} - 1)^2
};

/// Parameters of the single-exponent form
/// rho = e^{chi1 a^2 + chi2 H + chi1* a+^2} / Z.  chi2 is real and negative
/// for normalizable states; chi1 carries the phase of gamma.
struct ExpSumParams {
    std::complex<double> chi1{0.0, 0.0};
    double chi2 = -1.0;
};

/// Heat bath attached during an isochore: temperature and heat conductance
/// Gamma = k_down - k_up with detailed balance k_up/k_down = e^{-w/T}.
struct BathSpec {
    double temperature = 1.0;  // k_B T >= 0
    double conductance = 0.0;  // Gamma >= 0

    double k_down(double omega) const;
    double k_up(double omega) const;
};

/// Equilibrium energy (w/2) coth(w/(2T)); ground-state energy w/2 at T = 0.
double equilibrium_energy(double omega, double temperature);

/// Casimir invariant X = sqrt(<H>^2 - <L>^2 - w^2 <D>^2 / 4).
/// Throws UnphysicalStateError unless X is real and X >= w/2 (Heisenberg).
double casimir(const StateVector& s);

/// Symplectic eigenvalue nu = X / w of the covariance matrix; nu = 1/2 iff pure.
double symplectic_eigenvalue(const StateVector& s);

/// True when s lies in the domain of the product form with real beta > 0,
/// i.e. sqrt(<L>^2 + w^2 <D>^2 / 4) < <H> - w/2.  Physical states outside
/// this window (strong squeezing) have no (beta, gamma) representation.
bool product_form_representable(const StateVector& s);

/// Invert (<H>, <L>, <D>) -> (beta, gamma).  Throws UnphysicalStateError for
/// unphysical input, for (near-)pure states where beta diverges
/// (X - w/2 < 1e-12 w), and outside the product-form domain.
GaussianParams params_from_expectations(const StateVector& s);

/// Evaluate (<H>, <L>, <D>) of the product-form state.
StateVector expectations_from_params(const GaussianParams& p, double omega);

/// Map (beta, gamma) -> (chi1, chi2).  Continuous at gamma = 0 where
/// chi1 -> 0 and chi2 -> -beta.  Branches are fixed by the conjugation
/// identities rho a rho^-1 evaluated in both forms; see the tests.
ExpSumParams chi_from_product_params(const GaussianParams& p, double omega);

/// Von Neumann entropy as a functional of the three observables,
/// S = -chi2 <H> + Im(chi1) <D> + 2 Re(chi1) <L> / w + ln Z.
/// Falls back to the symplectic route near the pure boundary and outside
/// the product-form domain; both routes agree to 1e-9 where both apply.
double von_neumann_entropy(const StateVector& s);

/// Entropy of a centered Gaussian state with symplectic eigenvalue nu:
/// (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2).
double von_neumann_entropy_symplectic(double nu);

/// Entropy of the energy measurement distribution; depends on <H> and w
/// only and equals the thermal-state entropy at the same energy.
/// Throws for 2<H> < w; returns 0 in the pure limit 2<H> = w.
double energy_entropy(const StateVector& s);

/// Temperature of the equilibrium state with the same <H> at the same w:
/// T_int = w / (2 arccoth(2<H>/w)); inverse of equilibrium_energy.
double internal_temperature(const StateVector& s);

}  // namespace qotto
