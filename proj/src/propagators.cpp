#include "qotto/propagators.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qotto/ode.hpp"

namespace qotto {

namespace {

void check_frequency(double omega, const char* where) {
    if (!(omega > 0.0)) {
        std::ostringstream msg;
        msg << where << ": frequency must be positive, got " << omega;
        throw UnphysicalStateError(msg.str());
    }
}

// d/dt (H, L, D) on an adiabat at time t.
inline Eigen::Vector3d adiabat_rhs(const Eigen::Vector3d& v, double alpha, double omega_t) {
    const double drive = alpha * (v[0] - v[1]);
    return {drive, -drive - omega_t * omega_t * v[2], 4.0 * v[1]};
}

}  // namespace

StateVector AffineBranchMap::apply(const StateVector& s) const {
    const Eigen::Vector3d v{s.energy, s.lagrangian, s.correlation};
    const Eigen::Vector3d out = m * v + b;
    return {out[0], out[1], out[2], omega_out};
}

AffineBranchMap AffineBranchMap::identity(double omega) {
    AffineBranchMap map;
    map.omega_in = map.omega_out = omega;
    return map;
}

AffineBranchMap compose(const AffineBranchMap& second, const AffineBranchMap& first) {
    if (std::abs(second.omega_in - first.omega_out) >
        1e-9 * std::max(second.omega_in, first.omega_out)) {
        throw UnphysicalStateError("compose: branch frequencies do not chain");
    }
    AffineBranchMap out;
    out.m = second.m * first.m;
    out.b = second.m * first.b + second.b;
    out.omega_in = first.omega_in;
    out.omega_out = second.omega_out;
    out.duration = first.duration + second.duration;
    return out;
}

double spectral_radius(const Eigen::Matrix3d& m) {
    return m.eigenvalues().cwiseAbs().maxCoeff();
}

AffineBranchMap isochore_map(const BathSpec& bath, double omega, double tau) {
    check_frequency(omega, "isochore_map");
    if (!(tau >= 0.0)) throw UnphysicalStateError("isochore_map: negative duration");
    if (!(bath.conductance >= 0.0)) throw UnphysicalStateError("isochore_map: Gamma < 0");

    const double decay = std::exp(-bath.conductance * tau);
    const double heq = equilibrium_energy(omega, bath.temperature);
    const double phase = 2.0 * omega * tau;

    AffineBranchMap map;
    map.omega_in = map.omega_out = omega;
    map.duration = tau;
    map.m.setZero();
    map.m(0, 0) = decay;
    map.m(1, 1) = decay * std::cos(phase);
    map.m(1, 2) = -decay * 0.5 * omega * std::sin(phase);
    map.m(2, 1) = decay * 2.0 / omega * std::sin(phase);
    map.m(2, 2) = decay * std::cos(phase);
    map.b = Eigen::Vector3d{(1.0 - decay) * heq, 0.0, 0.0};
    return map;
}

double heat_current(const StateVector& s, const BathSpec& bath) {
    const double heq = equilibrium_energy(s.omega, bath.temperature);
    return -bath.conductance * (s.energy - heq);
}

double AdiabatSchedule::alpha() const {
    if (!(duration > 0.0)) throw UnphysicalStateError("AdiabatSchedule: duration must be > 0");
    return std::log(omega_end / omega_start) / duration;
}

double AdiabatSchedule::omega_at(double t) const { return omega_start * std::exp(alpha() * t); }

AffineBranchMap adiabat_map_numeric(const AdiabatSchedule& sched, double rtol, double atol) {
    check_frequency(sched.omega_start, "adiabat_map_numeric");
    check_frequency(sched.omega_end, "adiabat_map_numeric");
    const double a = sched.alpha();
    const double w0 = sched.omega_start;

    // Propagate the identity columns as one 3x3 system.
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    integrate_ode(
        [a, w0](double t, const Eigen::Matrix3d& y, Eigen::Matrix3d& dydt) {
            const double wt = w0 * std::exp(a * t);
            for (int c = 0; c < 3; ++c) dydt.col(c) = adiabat_rhs(y.col(c), a, wt);
        },
        m, 0.0, sched.duration, opt);

    AffineBranchMap map;
    map.m = m;
    map.omega_in = sched.omega_start;
    map.omega_out = sched.omega_end;
    map.duration = sched.duration;
    return map;
}

AffineBranchMap adiabat_map_sudden(double omega_i, double omega_f) {
    check_frequency(omega_i, "adiabat_map_sudden");
    check_frequency(omega_f, "adiabat_map_sudden");
    const double r2 = (omega_f / omega_i) * (omega_f / omega_i);
    AffineBranchMap map;
    map.m << 0.5 * (1.0 + r2), 0.5 * (1.0 - r2), 0.0,  //
        0.5 * (1.0 - r2), 0.5 * (1.0 + r2), 0.0,       //
        0.0, 0.0, 1.0;
    map.omega_in = omega_i;
    map.omega_out = omega_f;
    map.duration = 0.0;
    return map;
}

AffineBranchMap adiabat_map_quasistatic(double omega_i, double omega_f, double tau) {
    check_frequency(omega_i, "adiabat_map_quasistatic");
    check_frequency(omega_f, "adiabat_map_quasistatic");
    const double r = omega_f / omega_i;
    AffineBranchMap map;
    map.m = Eigen::Vector3d{r, r, 1.0}.asDiagonal();
    map.omega_in = omega_i;
    map.omega_out = omega_f;
    map.duration = tau;
    return map;
}

AdiabatEvolution adiabat_evolve(const StateVector& s0, const AdiabatSchedule& sched, double rtol,
                                double atol) {
    const double a = sched.alpha();
    const double w0 = sched.omega_start;
    Eigen::Vector4d y{s0.energy, s0.lagrangian, s0.correlation, 0.0};  // last entry: W_f
    OdeOptions opt;
    opt.rtol = rtol;
    opt.atol = atol;
    integrate_ode(
        [a, w0](double t, const Eigen::Vector4d& v, Eigen::Vector4d& dvdt) {
            const double wt = w0 * std::exp(a * t);
            dvdt.head<3>() = adiabat_rhs(v.head<3>(), a, wt);
            dvdt[3] = -a * v[1];
        },
        y, 0.0, sched.duration, opt);
    return {{y[0], y[1], y[2], sched.omega_end}, y[3]};
}

double sudden_friction_work(const StateVector& s0, double omega_i, double omega_f) {
    check_frequency(omega_i, "sudden_friction_work");
    check_frequency(omega_f, "sudden_friction_work");
    const double r = omega_f / omega_i;
    return 0.25 * (r * r - 1.0) * (s0.energy - s0.lagrangian) -
           0.5 * (s0.energy + s0.lagrangian) * std::log(r);
}

StateVector adiabat_quasistatic_correction(const StateVector& s0, const AdiabatSchedule& sched) {
    const double a = sched.alpha();
    const double w0 = sched.omega_start;
    const double wf = sched.omega_end;
    if (std::abs(a) / w0 > 0.2) {
        std::fprintf(stderr,
                     "qotto: adiabat_quasistatic_correction called with |alpha|/w0 = %.3g "
                     "outside the validity regime (<= 0.2)\n",
                     std::abs(a) / w0);
    }
    const double half = 0.5 * a / w0;
    StateVector out;
    out.omega = wf;
    out.energy = s0.energy * (wf / w0) * (1.0 + half * half) -
                 s0.lagrangian * (wf / w0) * half * half +
                 s0.correlation * a * wf / (4.0 * w0);
    out.lagrangian = s0.lagrangian * wf / w0;
    out.correlation = s0.correlation;
    return out;
}

PowerSplit instantaneous_power(const StateVector& s, double alpha) {
    return {alpha * (s.energy - s.lagrangian), alpha * s.energy, -alpha * s.lagrangian};
}

double friction_work_closed_form(double omega_h, double omega_c, double t_h, double t_c,
                                 double alpha, bool high_temperature) {
    check_frequency(omega_h, "friction_work_closed_form");
    check_frequency(omega_c, "friction_work_closed_form");
    const double a2 = alpha * alpha;
    if (high_temperature) {
        const double ratio = alpha / omega_c;
        const double c = omega_h / omega_c;
        return 0.25 * t_h * ratio * ratio * (1.0 / (c * c * c) + c * t_c / t_h);
    }
    const double coth_h = 2.0 * equilibrium_energy(omega_h, t_h) / omega_h;
    const double coth_c = 2.0 * equilibrium_energy(omega_c, t_c) / omega_c;
    return 0.125 * (a2 / (omega_h * omega_h) * omega_c * coth_h +
                    a2 / (omega_c * omega_c) * omega_h * coth_c);
}

}  // namespace qotto
