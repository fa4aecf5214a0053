#pragma once

#include <algorithm>
#include <cmath>

#include "qotto/errors.hpp"

// Embedded Dormand-Prince 5(4) with FSAL and elementwise error control.
// State must be an Eigen matrix/vector type (real or complex); the scaled
// error norm uses cwiseAbs(), which both support.

namespace qotto {

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 = heuristic
    long max_steps = 50'000'000;
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
};

/// Integrate dy/dt = f(t, y) from t0 to t1 in place.  f has signature
/// f(double t, const State& y, State& dydt).
template <typename State, typename Rhs>
OdeStats integrate_ode(Rhs&& f, State& y, double t0, double t1, const OdeOptions& opt = {}) {
    OdeStats stats;
    const double span = t1 - t0;
    if (span == 0.0) return stats;
    if (!(span > 0.0)) throw SolverError("integrate_ode: t1 < t0");

    // Dormand-Prince 5(4) tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // e_i = b_i - bhat_i (5th minus embedded 4th order weights).
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y;
    State ytmp = y, ynew = y;

    double t = t0;
    f(t, y, k1);  // k1 stays valid across rejects and is refreshed by FSAL on accepts
    double h = opt.initial_step > 0.0 ? opt.initial_step : span * 1e-3;
    h = std::min(h, span);

    while (t < t1) {
        if (stats.accepted + stats.rejected >= opt.max_steps) {
            throw SolverError("integrate_ode: step budget exhausted");
        }
        if (!(h > (std::abs(t) + span) * 1e-15)) {
            throw SolverError("integrate_ode: step size underflow");
        }
        if (t + h > t1) h = t1 - t;

        ytmp = y + (h * a21) * k1;
        f(t + c2 * h, ytmp, k2);
        ytmp = y + (h * a31) * k1 + (h * a32) * k2;
        f(t + c3 * h, ytmp, k3);
        ytmp = y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3;
        f(t + c4 * h, ytmp, k4);
        ytmp = y + (h * a51) * k1 + (h * a52) * k2 + (h * a53) * k3 + (h * a54) * k4;
        f(t + c5 * h, ytmp, k5);
        ytmp = y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 + (h * a64) * k4 +
               (h * a65) * k5;
        f(t + h, ytmp, k6);
        ynew = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 + (h * b6) * k6;
        f(t + h, ynew, k7);

        ytmp = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 + (h * e5) * k5 + (h * e6) * k6 +
               (h * e7) * k7;
        const double err =
            (ytmp.cwiseAbs().array() /
             (opt.atol + opt.rtol * y.cwiseAbs().cwiseMax(ynew.cwiseAbs()).array()))
                .maxCoeff();

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            ++stats.accepted;
        } else {
            ++stats.rejected;
        }
        const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return stats;
}

}  // namespace qotto
