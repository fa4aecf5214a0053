#pragma once

#include <Eigen/Dense>

#include "qotto/state.hpp"

// Branch propagators for the four-stroke cycle.  Each branch acts on the
// observable vector (H, L, D) as an affine map v -> M v + b; the paper's
// 4x4 form with the identity row is carried here as (M, b).

namespace qotto {

struct AffineBranchMap {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    double omega_in = 1.0;
    double omega_out = 1.0;
    double duration = 0.0;

    StateVector apply(const StateVector& s) const;
    static AffineBranchMap identity(double omega);
};

/// second after first; frequencies must chain.
AffineBranchMap compose(const AffineBranchMap& second, const AffineBranchMap& first);

double spectral_radius(const Eigen::Matrix3d& m);

/// Exact isochore propagator at fixed frequency: the H row relaxes to the
/// equilibrium energy at rate Gamma, the (L, D) block rotates at 2w inside
/// an e^{-Gamma tau} envelope.  No integration involved.
AffineBranchMap isochore_map(const BathSpec& bath, double omega, double tau);

/// Q_dot = -Gamma (<H> - H_eq); Newtonian Gamma (T_B - T_int) at high T.
double heat_current(const StateVector& s, const BathSpec& bath);

/// Frequency ramp with constant nonadiabatic parameter alpha = wdot/w:
/// w(t) = w_start (w_end/w_start)^{t/tau}.
struct AdiabatSchedule {
    double omega_start = 1.0;
    double omega_end = 1.0;
    double duration = 1.0;

    double alpha() const;             // ln(w_end/w_start)/tau
    double omega_at(double t) const;  // w_start e^{alpha t}
};

/// Exact adiabat propagator, built by integrating the three columns of the
/// identity through dH = a(H-L)dt, dL = (-a(H-L) - w(t)^2 D)dt, dD = 4L dt.
/// The returned map has b = 0 and conserves X/w to ~10x the tolerance.
AffineBranchMap adiabat_map_numeric(const AdiabatSchedule& sched, double rtol = 1e-10,
                                    double atol = 1e-12);

/// Sudden (alpha >> w) limit: (H, L) mixed by r = w_f/w_i, D frozen.
AffineBranchMap adiabat_map_sudden(double omega_i, double omega_f);

/// Idealized quasistatic (alpha << w) limit: H and L scale with w, D frozen;
/// conserves both X/w and the number expectation H/w - 1/2.
AffineBranchMap adiabat_map_quasistatic(double omega_i, double omega_f, double tau);

struct AdiabatEvolution {
    StateVector state;     // state at the end of the branch
    double friction_work;  // accumulated -integral alpha <L> dt
};

/// Propagate a single state through an adiabat, accumulating the friction
/// work along the way.
AdiabatEvolution adiabat_evolve(const StateVector& s0, const AdiabatSchedule& sched,
                                double rtol = 1e-10, double atol = 1e-12);

/// tau -> 0 limit of the friction-work integral -int alpha <L> dt for a jump
/// w_i -> w_f (the (H, L) mixing of the sudden propagator integrated in
/// d(ln w)): W_f = (r^2-1)(H0-L0)/4 - (H0+L0) ln(r) / 2.
double sudden_friction_work(const StateVector& s0, double omega_i, double omega_f);

/// Phase-averaged second-order energy at the end of the branch,
/// H ~ H0 (w/w0)(1 + (a/2w0)^2) - L0 (w/w0)(a/2w0)^2 + D0 a w/(4 w0).
/// Valid for |alpha|/w_start << 1; warns on stderr outside |alpha|/w <= 0.2.
/// L and D carry the zeroth-order scaling (L0 w/w0, D0).
StateVector adiabat_quasistatic_correction(const StateVector& s0, const AdiabatSchedule& sched);

struct PowerSplit {
    double total = 0.0;     // alpha (<H> - <L>)
    double external = 0.0;  // alpha <H>
    double friction = 0.0;  // -alpha <L>
};

PowerSplit instantaneous_power(const StateVector& s, double alpha);

/// Accumulated work against friction on both adiabats of the limit cycle
/// under D(0) = 0 and full equilibration (Gamma -> infinity):
///   exact:  (1/8)[(a/w_h)^2 w_c coth(w_h/2T_h) + (a/w_c)^2 w_h coth(w_c/2T_c)]
///   high T: (T_h/4)(a/w_c)^2 (C^-3 + C T_c/T_h)
/// Always >= 0.
double friction_work_closed_form(double omega_h, double omega_c, double t_h, double t_c,
                                 double alpha, bool high_temperature);

}  // namespace qotto
