#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qotto/cycle.hpp"

// Closed-form performance results (quasistatic and sudden limits), optimal
// time allocations, and the randomized limit-cycle sweeps behind the
// power/efficiency scatter studies.

namespace qotto {

/// G_W = (w_h - w_c)/2 (coth(w_h/2T_h) - coth(w_c/2T_c)); >= 0 iff the
/// compression ratio stays below T_h/T_c.  High-T variant
/// T_c(1 - C) + T_h(1 - 1/C).
double g_work(const EngineSpec& engine, bool high_temperature = false);

/// G_S = (w_h/T_h - w_c/T_c)/2 (coth(w_c/2T_c) - coth(w_h/2T_h)); high-T
/// variant C T_c/T_h + T_h/(C T_c) - 2.
double g_entropy(const EngineSpec& engine, bool high_temperature = false);

/// Heat-transport factor F(x_c, x_h) = (e^{x_c}-1)(e^{x_h}-1)/(e^{x_c+x_h}-1)
/// with x = Gamma tau; F in [0, 1], F(x, x) = tanh(x/2).
double f_transport(double x_c, double x_h);

/// W_q = -G_W F; the work of a quasistatic limit cycle.
double quasistatic_work(const EngineSpec& engine, double x_c, double x_h,
                        bool high_temperature = false);

/// Entropy production of a quasistatic limit cycle, G_S F >= 0.
double entropy_production_quasistatic(const EngineSpec& engine, double x_c, double x_h,
                                      bool high_temperature = false);

struct IsochoreSplit {
    double tau_h = 0.0;
    double tau_c = 0.0;
};

/// Split tau_iso between the isochores so that F is maximal:
/// Gamma_h (cosh(Gamma_c tau_c) - 1) = Gamma_c (cosh(Gamma_h tau_h) - 1).
IsochoreSplit optimal_time_partition(double gamma_h, double gamma_c, double tau_iso);

/// Positive root x of 2x + Gamma tau_adi = 2 sinh(x) (equal conductances);
/// the per-isochore x = Gamma tau that maximizes F / tau.  Returns 0 when
/// tau_adi = 0.
double optimal_isochore_allocation(double gamma, double tau_adi);

/// Residual of the general optimal-total-time condition
/// Gamma_c tau (cosh(Gamma_h tau_h) - 1) =
///   sinh(Gamma_h tau_h + Gamma_c tau_c) - sinh(Gamma_c tau_c) - sinh(Gamma_h tau_h).
double optimal_tau_condition_residual(double gamma_h, double gamma_c, double tau_h, double tau_c,
                                      double tau_total);

/// Minimum adiabat time 1/w_c + 1/w_h assumed by the power bound.
double adiabat_time_floor(const EngineSpec& engine);

/// Quasistatic optimal power at total cycle time tau (equal conductances):
/// P_q = G_W tanh((Gamma/4)(tau - floor)) / tau.  Throws below the floor.
double quasistatic_power_bound(const EngineSpec& engine, double gamma, double tau);

// --- Sudden limit (Gamma -> infinity idealization) ----------------------
// All sudden quantities are built constructively: apply the sudden branch
// propagator to the full-equilibration endpoints B = hot equilibrium,
// D = cold equilibrium.  high_temperature replaces the equilibrium energies
// by k_B T.  The printed closed forms are kept as diagnostics because their
// coth arguments and prefactors disagree internally; the half-argument
// variant reproduces the construction exactly.

double sudden_work(const EngineSpec& engine, bool high_temperature = false);
double sudden_heat_hot(const EngineSpec& engine, bool high_temperature = false);
double sudden_efficiency_constructive(const EngineSpec& engine, bool high_temperature = false);

/// Literal evaluation of the printed sudden-work formula; half_argument
/// replaces coth(w/T) by coth(w/2T).
double sudden_work_printed(const EngineSpec& engine, bool half_argument);

/// Efficiency at the sudden maximum-work point, (1 - sqrt(1/r))/(2 + sqrt(1/r)).
double sudden_efficiency(double temperature_ratio);
/// Efficiency at quasistatic maximum power, 1 - sqrt(1/r) (endoreversible).
double quasistatic_efficiency(double temperature_ratio);
double carnot_efficiency(double temperature_ratio);

/// Upper bound on the friction work, sudden minus quasistatic work at full
/// equilibration: w_h (C-1)^2 (1 + C + 2C N_c + 2 N_h) / (4 C^2); high-T
/// variant T_h (C-1)^2 (C^-2 + T_c/T_h) / 2.
double friction_upper_bound(const EngineSpec& engine, bool high_temperature = false);

enum class CompressionRegime { quasistatic, sudden };

/// sqrt(r) (quasistatic) or r^{1/4} (sudden); high-temperature optima.
double optimal_compression_analytic(double temperature_ratio, CompressionRegime regime);

struct CompressionScan {
    double c_opt = 0.0;
    double work = 0.0;        // W at the optimum (negative for an engine)
    double efficiency = 0.0;  // Otto 1 - 1/C (quasistatic) or constructive (sudden)
};

/// Maximize produced work -W over a C grid at fixed omega_c and bath
/// temperatures, using the full-equilibration formulas.
CompressionScan optimal_compression_scan(double omega_c, double t_h, double t_c,
                                         CompressionRegime regime, double c_lo, double c_hi,
                                         double step, bool high_temperature = false);

// --- Randomized time-allocation sweeps -----------------------------------

struct SweepConfig {
    double tau_min = 0.0;  // 0 = default 1e-2 / omega_c
    double tau_max = 0.0;  // 0 = default 1e3 / omega_c
    int n = 1000;
    std::uint64_t seed = 1;
    // Branch classification thresholds on |alpha| / w_end.
    double sudden_alpha_ratio = 5.0;
    double quasistatic_alpha_ratio = 0.05;
    CycleOptions cycle;
    int threads = 1;
};

struct SweepRecord {
    int index = 0;
    TimeAllocation alloc;
    double tau_total = 0.0;
    double work = 0.0;
    double heat_hot = 0.0;
    double heat_cold = 0.0;
    std::optional<double> efficiency;
    double power = 0.0;
    double entropy_production = 0.0;
    std::string tag;
    bool ok = true;
};

/// Draw n time allocations log-uniformly, solve each limit cycle and record
/// its metrics.  Deterministic under the seed: each record derives its own
/// RNG stream from (seed, index), so thread count does not affect output.
std::vector<SweepRecord> random_sweep(const EngineSpec& engine, const SweepConfig& config);

}  // namespace qotto
