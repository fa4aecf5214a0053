#include "qotto/state.hpp"

#include <cmath>
#include <sstream>

namespace qotto {

namespace {

constexpr double kPureBoundary = 1e-12;  // reject X - w/2 < kPureBoundary * w

void require_positive_omega(double omega, const char* where) {
    if (!(omega > 0.0)) {
        std::ostringstream msg;
        msg << where << ": omega must be positive, got " << omega;
        throw UnphysicalStateError(msg.str());
    }
}

}  // namespace

double BathSpec::k_down(double omega) const {
    require_positive_omega(omega, "BathSpec::k_down");
    if (temperature <= 0.0) return conductance;  // T = 0: pure decay
    return conductance / (-std::expm1(-omega / temperature));
}

double BathSpec::k_up(double omega) const {
    require_positive_omega(omega, "BathSpec::k_up");
    if (temperature <= 0.0) return 0.0;
    return conductance * std::exp(-omega / temperature) / (-std::expm1(-omega / temperature));
}

double equilibrium_energy(double omega, double temperature) {
    require_positive_omega(omega, "equilibrium_energy");
    if (temperature < 0.0) throw UnphysicalStateError("equilibrium_energy: negative temperature");
    const double x = omega / (2.0 * temperature);  // inf at T = 0
    if (!(x < 350.0)) return 0.5 * omega;          // coth saturates at 1
    return 0.5 * omega / std::tanh(x);
}

double casimir(const StateVector& s) {
    require_positive_omega(s.omega, "casimir");
    const double w = s.omega;
    const double arg = s.energy * s.energy - s.lagrangian * s.lagrangian -
                       0.25 * w * w * s.correlation * s.correlation;
    if (!(arg >= 0.0)) {
        throw UnphysicalStateError("casimir: H^2 - L^2 - w^2 D^2/4 is negative");
    }
    const double x = std::sqrt(arg);
    if (x < 0.5 * w * (1.0 - 1e-12)) {
        throw UnphysicalStateError("casimir: X < w/2 violates the Heisenberg bound");
    }
    return x;
}

double symplectic_eigenvalue(const StateVector& s) { return casimir(s) / s.omega; }

bool product_form_representable(const StateVector& s) {
    const double w = s.omega;
    const double squeeze2 = s.lagrangian * s.lagrangian +
                            0.25 * w * w * s.correlation * s.correlation;
    const double margin = s.energy - 0.5 * w;
    return margin > 0.0 && squeeze2 < margin * margin;
}

GaussianParams params_from_expectations(const StateVector& s) {
    const double w = s.omega;
    const double x = casimir(s);
    if (x - 0.5 * w < kPureBoundary * w) {
        throw UnphysicalStateError("params_from_expectations: pure state, beta diverges");
    }
    // den = 4L^2 + w^2 D^2 - (w - 2H)^2; negative on the representable domain.
    const double den = 4.0 * s.lagrangian * s.lagrangian +
                       w * w * s.correlation * s.correlation -
                       (w - 2.0 * s.energy) * (w - 2.0 * s.energy);
    const double ebw_num = 4.0 * s.lagrangian * s.lagrangian - 4.0 * s.energy * s.energy +
                           w * w * (1.0 + s.correlation * s.correlation);
    const double ebw = ebw_num / den;
    if (!(den < 0.0) || !(ebw > 1.0)) {
        throw UnphysicalStateError(
            "params_from_expectations: state lies outside the product-form domain "
            "(squeezing amplitude exceeds <H> - w/2)");
    }
    GaussianParams p;
    p.beta = std::log(ebw) / w;
    p.gamma = w * std::complex<double>(2.0 * s.lagrangian, w * s.correlation) / den;
    return p;
}

StateVector expectations_from_params(const GaussianParams& p, double omega) {
    require_positive_omega(omega, "expectations_from_params");
    if (!(p.beta > 0.0)) throw UnphysicalStateError("expectations_from_params: beta must be > 0");
    const double v = std::exp(-p.beta * omega);  // in (0,1); underflows to 0 for huge beta
    const double g2 = std::norm(p.gamma);
    // Normalizability: 2|gamma| < e^{beta w} - 1, i.e. 2|gamma| v < 1 - v.
    if (!(2.0 * std::sqrt(g2) * v < 1.0 - v)) {
        throw UnphysicalStateError("expectations_from_params: 4|gamma|^2 >= (e^{beta w}-1)^2");
    }
    const double den = (1.0 - v) * (1.0 - v) - 4.0 * g2 * v * v;
    StateVector s;
    s.omega = omega;
    s.energy = omega * (1.0 - (4.0 * g2 + 1.0) * v * v) / (2.0 * den);
    const std::complex<double> a2 = 2.0 * std::conj(p.gamma) * v * v / den;
    s.lagrangian = -omega * a2.real();
    s.correlation = 2.0 * a2.imag();
    return s;
}

ExpSumParams chi_from_product_params(const GaussianParams& p, double omega) {
    require_positive_omega(omega, "chi_from_product_params");
    if (!(p.beta > 0.0)) throw UnphysicalStateError("chi_from_product_params: beta must be > 0");
    const double bw = p.beta * omega;
    if (bw > 300.0) {
        // e^{beta w} would overflow downstream; the state is numerically pure.
        throw UnphysicalStateError("chi_from_product_params: beta*omega too large");
    }
    const double v = std::exp(-bw);
    const double g2 = std::norm(p.gamma);
    if (!(2.0 * std::sqrt(g2) * v < 1.0 - v)) {
        throw UnphysicalStateError("chi_from_product_params: parameters violate normalizability");
    }
    // Scaled by e^{-2 beta w}:  t = W v^2 with W = e^{2bw} - 1 - 4|g|^2, and
    // s = sqrt(K) v^2 with K = W^2 - 16|g|^2.  Both positive on the valid domain.
    const double t = 1.0 - (1.0 + 4.0 * g2) * v * v;
    const double s2 = t * t - 16.0 * g2 * v * v * v * v;
    if (!(t > 0.0) || !(s2 > 0.0)) {
        throw UnphysicalStateError("chi_from_product_params: negative discriminant");
    }
    const double s = std::sqrt(s2);
    // arcsinh(sqrt(K) e^{-beta w} / 2); equals beta*omega at gamma = 0.
    const double big_a = std::asinh(0.5 * std::exp(bw) * s);
    ExpSumParams out;
    out.chi2 = -big_a * t / (s * omega);
    out.chi1 = p.gamma * (2.0 * big_a * v * v / s);
    return out;
}

double von_neumann_entropy_symplectic(double nu) {
    if (!(nu > 0.5)) return 0.0;
    return (nu + 0.5) * std::log(nu + 0.5) - (nu - 0.5) * std::log(nu - 0.5);
}

double von_neumann_entropy(const StateVector& s) {
    const double w = s.omega;
    const double x = casimir(s);
    const bool near_pure = x - 0.5 * w < kPureBoundary * w;
    if (near_pure || !product_form_representable(s)) {
        return von_neumann_entropy_symplectic(x / w);
    }
    const GaussianParams p = params_from_expectations(s);
    const ExpSumParams c = chi_from_product_params(p, w);
    const double g2 = std::norm(p.gamma);
    const double em1 = std::expm1(p.beta * w);
    // ln Z = ln( csch(beta w / 2) / (2 sqrt(1 - 4|g|^2/(e^{bw}-1)^2)) )
    const double ln_z = -std::log(2.0 * std::sinh(0.5 * p.beta * w)) -
                        0.5 * std::log1p(-4.0 * g2 / (em1 * em1));
    return -c.chi2 * s.energy + c.chi1.imag() * s.correlation +
           2.0 * c.chi1.real() * s.lagrangian / w + ln_z;
}

double energy_entropy(const StateVector& s) {
    require_positive_omega(s.omega, "energy_entropy");
    const double x = s.energy / s.omega;  // <H>/w = nu of the thermal state with this energy
    if (x < 0.5 * (1.0 - 1e-12)) {
        throw UnphysicalStateError("energy_entropy: 2<H> < w");
    }
    // eq. S_E = (x+1/2) ln((x+1/2)/(x-1/2)) - ln(1/(x-1/2)) rearranged to the
    // cancellation-free Gaussian form.
    return von_neumann_entropy_symplectic(x);
}

double internal_temperature(const StateVector& s) {
    require_positive_omega(s.omega, "internal_temperature");
    const double w = s.omega;
    if (s.energy < 0.5 * w * (1.0 - 1e-12)) {
        throw UnphysicalStateError("internal_temperature: <H> < w/2");
    }
    const double num = 2.0 * s.energy + w;
    const double den = 2.0 * s.energy - w;
    if (!(den > 0.0)) return 0.0;  // ground state
    return w / std::log(num / den);
}

}  // namespace qotto
