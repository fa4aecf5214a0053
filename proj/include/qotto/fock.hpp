#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qotto/cycle.hpp"

// Brute-force ground truth: dense density-matrix evolution in a truncated
// Fock space.  All operators live in one fixed basis (the number basis of a
// reference frequency); operators at other frequencies are Bogoliubov
// combinations of the shared Q and P matrices.

namespace qotto::fock {

using Matrix = Eigen::MatrixXcd;

struct FockConfig {
    int n_max = 0;           // 0 = adaptive initial choice
    int n_cap = 512;         // hard truncation cap
    double leak_tol = 1e-10; // max population allowed in the top two levels
    double rtol = 1e-9;
    double atol = 1e-12;
    double omega_ref = 0.0;  // 0 = sqrt(omega_h omega_c) for engine runs
};

class FockSpace {
  public:
    FockSpace(int dim, double omega_ref);

    int dim() const { return n_; }
    double omega_ref() const { return omega_ref_; }
    const Matrix& q() const { return q_; }
    const Matrix& p() const { return p_; }
    const Matrix& correlation() const { return d_; }  // QP + PQ

    Matrix lowering(double omega) const;  // sqrt(w/2) Q + i P / sqrt(2w)
    Matrix hamiltonian(double omega) const;
    Matrix lagrangian(double omega) const;
    Matrix number(double omega) const;

    Matrix thermal_state(double omega, double temperature) const;

    /// Literal product form e^{gamma a^2} e^{-beta H} e^{gamma* a+^2} / Z,
    /// built from the nilpotent ladder series; requires omega == omega_ref.
    Matrix product_state(const GaussianParams& params, double omega) const;

    /// Normalized exp(chi1 a^2 + chi2 H + chi1* a+^2) at any frequency, via
    /// the observable decomposition chi2 H - (2 Re chi1 / w) L - Im(chi1) D.
    Matrix exp_sum_state(const ExpSumParams& params, double omega) const;

  private:
    int n_;
    double omega_ref_;
    Matrix q_, p_, q2_, p2_, d_;
};

StateVector expectations(const FockSpace& space, const Matrix& rho, double omega);

double trace_distance(const Matrix& rho1, const Matrix& rho2);
double entropy_eigenvalues(const Matrix& rho);

struct StateChecks {
    double trace_error = 0.0;       // |tr rho - 1|
    double hermiticity_error = 0.0; // max |rho - rho+|
    double top_population = 0.0;    // population of the top two levels
    double min_eigenvalue = 0.0;    // only filled by check_state(..., full)
};

/// Invariant checks; throws TruncationLeakError when the top two levels hold
/// more than cfg.leak_tol.  full = true adds the (costly) positivity check.
StateChecks check_state(const Matrix& rho, const FockConfig& cfg, bool full = false);

void evolve_isochore(const FockSpace& space, Matrix& rho, const BathSpec& bath, double omega,
                     double tau, const FockConfig& cfg);

void evolve_adiabat(const FockSpace& space, Matrix& rho, const AdiabatSchedule& sched,
                    const FockConfig& cfg);

struct OracleCorners {
    StateVector a, b, c, d;
    int cycles = 0;      // cycles until the corner stopped moving
    int dim = 0;         // truncation dimension actually used
};

/// Cycle a density matrix from cold equilibrium until the corner
/// expectations settle (change < 1e-8 in the energy norm), doubling the
/// truncation dimension on leak.  Independent of the three-variable path.
OracleCorners oracle_limit_cycle(const EngineSpec& engine, const TimeAllocation& alloc,
                                 const FockConfig& cfg = {}, int max_cycles = 400);

}  // namespace qotto::fock
