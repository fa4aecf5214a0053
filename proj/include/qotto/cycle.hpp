#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "qotto/propagators.hpp"

// Four-branch Otto cycle: hot isochore (A->B), power adiabat (B->C),
// cold isochore (C->D), compression adiabat (D->A).  The cycle propagator
// is U_ch U_c U_hc U_h with reference corner A (start of the hot isochore).

namespace qotto {

struct EngineSpec {
    double omega_h = 2.0;
    double omega_c = 1.0;
    BathSpec hot{5.0, 0.03};
    BathSpec cold{1.0, 0.03};

    double compression_ratio() const { return omega_h / omega_c; }
    void validate() const;
};

struct TimeAllocation {
    double tau_h = 6.0;
    double tau_hc = 1.0;
    double tau_c = 12.0;
    double tau_ch = 1.0;

    double total() const { return tau_h + tau_hc + tau_c + tau_ch; }
    void validate() const;
};

enum class AdiabatMode { numeric, sudden, quasistatic };

std::string_view to_string(AdiabatMode mode);

struct CycleOptions {
    AdiabatMode mode = AdiabatMode::numeric;
    double adiabat_rtol = 1e-10;
    double adiabat_atol = 1e-12;
};

struct BranchMaps {
    AffineBranchMap hot_isochore;          // A -> B at omega_h
    AffineBranchMap power_adiabat;         // B -> C, omega_h -> omega_c
    AffineBranchMap cold_isochore;         // C -> D at omega_c
    AffineBranchMap compression_adiabat;   // D -> A, omega_c -> omega_h
};

BranchMaps branch_maps(const EngineSpec& engine, const TimeAllocation& alloc,
                       const CycleOptions& opts = {});

AffineBranchMap cycle_map(const EngineSpec& engine, const TimeAllocation& alloc,
                          const CycleOptions& opts = {});

struct LimitCycle {
    StateVector a, b, c, d;  // corners; a at omega_h, c and d at omega_c
    AffineBranchMap map;     // full cycle map referenced at corner A
    double spectral_radius = 0.0;
};

/// Solve (I - M) v = b for the unique fixed point and propagate the corners.
/// Throws NoLimitCycleError when the homogeneous part is not a contraction
/// (e.g. both Gamma tau products vanish).
LimitCycle limit_cycle(const EngineSpec& engine, const TimeAllocation& alloc,
                       const CycleOptions& opts = {});

/// Norm used for convergence: Euclidean on (H, L, w D / 2), all energies.
double energy_norm(const StateVector& s);

/// Repeated application of the cycle map from v0; returns the corner-A
/// iterates (v0 first) up to and including the first within tol of the
/// fixed point.  Throws SolverError if n_max is exceeded.
std::vector<StateVector> iterate_to_limit(const EngineSpec& engine, const TimeAllocation& alloc,
                                          const StateVector& v0, int n_max, double tol,
                                          const CycleOptions& opts = {});

struct CycleMetrics {
    double work = 0.0;      // W = (H_C - H_B) + (H_A - H_D); negative for an engine
    double heat_hot = 0.0;  // Q_h = H_B - H_A
    double heat_cold = 0.0; // Q_c = H_D - H_C
    double power = 0.0;     // -W / tau
    double entropy_production = 0.0;  // -Q_h/T_h - Q_c/T_c
    std::optional<double> efficiency; // -W/Q_h, only when Q_h > 0
    bool is_engine = false;           // Q_h > 0 and W < 0
    double friction_work_expansion = 0.0;    // -int alpha <L> dt on B -> C
    double friction_work_compression = 0.0;  // same on D -> A
    std::array<double, 4> s_vn{};  // entropies at corners A, B, C, D
    std::array<double, 4> s_e{};
    std::array<double, 4> t_int{};
};

CycleMetrics cycle_metrics(const LimitCycle& lc, const EngineSpec& engine,
                           const TimeAllocation& alloc, const CycleOptions& opts = {});

enum class Branch { hot_isochore, power_adiabat, cold_isochore, compression_adiabat };

std::string_view to_string(Branch b);

struct TrajectoryPoint {
    double t = 0.0;
    Branch branch = Branch::hot_isochore;
    StateVector state;
    double s_vn = 0.0;
    double s_e = 0.0;
    double t_int = 0.0;
    double heat_current = 0.0;  // nonzero on isochores only
    double power = 0.0;         // nonzero on adiabats only
};

/// Dense sampling of one limit-cycle period (t = 0 at corner A, last point
/// back at A).  Sample spacing dt per branch, branch endpoints always
/// included.
std::vector<TrajectoryPoint> trajectory_sample(const EngineSpec& engine,
                                               const TimeAllocation& alloc, double dt,
                                               const CycleOptions& opts = {});

}  // namespace qotto
