#include "qotto/cycle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qotto {

namespace {

AffineBranchMap make_adiabat_map(double omega_i, double omega_f, double tau,
                                 const CycleOptions& opts) {
    switch (opts.mode) {
        case AdiabatMode::numeric:
            return adiabat_map_numeric({omega_i, omega_f, tau}, opts.adiabat_rtol,
                                       opts.adiabat_atol);
        case AdiabatMode::sudden: {
            AffineBranchMap map = adiabat_map_sudden(omega_i, omega_f);
            map.duration = tau;
            return map;
        }
        case AdiabatMode::quasistatic:
            return adiabat_map_quasistatic(omega_i, omega_f, tau);
    }
    throw ConfigError("make_adiabat_map: unknown adiabat mode");
}

double safe_entropy(const StateVector& s) {
    // Corner states of contracted cycles can sit a rounding error below the
    // Heisenberg bound; report 0 there instead of failing the whole report.
    try {
        return von_neumann_entropy(s);
    } catch (const UnphysicalStateError&) {
        return 0.0;
    }
}

}  // namespace

void EngineSpec::validate() const {
    if (!(omega_h > omega_c) || !(omega_c > 0.0)) {
        throw ConfigError("EngineSpec: need omega_h > omega_c > 0");
    }
    if (!(hot.temperature > 0.0) || !(cold.temperature > 0.0)) {
        throw ConfigError("EngineSpec: bath temperatures must be positive");
    }
    if (!(hot.conductance >= 0.0) || !(cold.conductance >= 0.0)) {
        throw ConfigError("EngineSpec: bath conductances must be non-negative");
    }
}

void TimeAllocation::validate() const {
    if (!(tau_h >= 0.0) || !(tau_hc >= 0.0) || !(tau_c >= 0.0) || !(tau_ch >= 0.0)) {
        throw ConfigError("TimeAllocation: durations must be non-negative");
    }
}

std::string_view to_string(AdiabatMode mode) {
    switch (mode) {
        case AdiabatMode::numeric: return "numeric";
        case AdiabatMode::sudden: return "sudden";
        case AdiabatMode::quasistatic: return "quasistatic";
    }
    return "?";
}

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::hot_isochore: return "hot_isochore";
        case Branch::power_adiabat: return "power_adiabat";
        case Branch::cold_isochore: return "cold_isochore";
        case Branch::compression_adiabat: return "compression_adiabat";
    }
    return "?";
}

BranchMaps branch_maps(const EngineSpec& engine, const TimeAllocation& alloc,
                       const CycleOptions& opts) {
    engine.validate();
    alloc.validate();
    BranchMaps maps;
    maps.hot_isochore = isochore_map(engine.hot, engine.omega_h, alloc.tau_h);
    maps.power_adiabat = make_adiabat_map(engine.omega_h, engine.omega_c, alloc.tau_hc, opts);
    maps.cold_isochore = isochore_map(engine.cold, engine.omega_c, alloc.tau_c);
    maps.compression_adiabat = make_adiabat_map(engine.omega_c, engine.omega_h, alloc.tau_ch, opts);
    return maps;
}

AffineBranchMap cycle_map(const EngineSpec& engine, const TimeAllocation& alloc,
                          const CycleOptions& opts) {
    const BranchMaps maps = branch_maps(engine, alloc, opts);
    return compose(maps.compression_adiabat,
                   compose(maps.cold_isochore, compose(maps.power_adiabat, maps.hot_isochore)));
}

LimitCycle limit_cycle(const EngineSpec& engine, const TimeAllocation& alloc,
                       const CycleOptions& opts) {
    const BranchMaps maps = branch_maps(engine, alloc, opts);
    const AffineBranchMap cyc = compose(
        maps.compression_adiabat,
        compose(maps.cold_isochore, compose(maps.power_adiabat, maps.hot_isochore)));

    const double rho = spectral_radius(cyc.m);
    if (!(rho < 1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "limit_cycle: spectral radius " << rho
            << " >= 1, no unique limit cycle (is Gamma_h tau_h + Gamma_c tau_c > 0?)";
        throw NoLimitCycleError(msg.str());
    }

    const Eigen::Vector3d v =
        (Eigen::Matrix3d::Identity() - cyc.m).partialPivLu().solve(cyc.b);

    LimitCycle lc;
    lc.map = cyc;
    lc.spectral_radius = rho;
    lc.a = StateVector{v[0], v[1], v[2], engine.omega_h};
    lc.b = maps.hot_isochore.apply(lc.a);
    lc.c = maps.power_adiabat.apply(lc.b);
    lc.d = maps.cold_isochore.apply(lc.c);
    return lc;
}

double energy_norm(const StateVector& s) {
    const double wd = 0.5 * s.omega * s.correlation;
    return std::sqrt(s.energy * s.energy + s.lagrangian * s.lagrangian + wd * wd);
}

std::vector<StateVector> iterate_to_limit(const EngineSpec& engine, const TimeAllocation& alloc,
                                          const StateVector& v0, int n_max, double tol,
                                          const CycleOptions& opts) {
    const LimitCycle lc = limit_cycle(engine, alloc, opts);
    std::vector<StateVector> iterates;
    iterates.push_back({v0.energy, v0.lagrangian, v0.correlation, engine.omega_h});
    for (int k = 0; k < n_max; ++k) {
        const StateVector& cur = iterates.back();
        const StateVector diff{cur.energy - lc.a.energy, cur.lagrangian - lc.a.lagrangian,
                               cur.correlation - lc.a.correlation, engine.omega_h};
        if (energy_norm(diff) < tol) return iterates;
        iterates.push_back(lc.map.apply(cur));
    }
    const StateVector& cur = iterates.back();
    const StateVector diff{cur.energy - lc.a.energy, cur.lagrangian - lc.a.lagrangian,
                           cur.correlation - lc.a.correlation, engine.omega_h};
    if (energy_norm(diff) < tol) return iterates;
    throw SolverError("iterate_to_limit: n_max exceeded before reaching tolerance");
}

CycleMetrics cycle_metrics(const LimitCycle& lc, const EngineSpec& engine,
                           const TimeAllocation& alloc, const CycleOptions& opts) {
    CycleMetrics out;
    out.heat_hot = lc.b.energy - lc.a.energy;
    out.heat_cold = lc.d.energy - lc.c.energy;
    out.work = (lc.c.energy - lc.b.energy) + (lc.a.energy - lc.d.energy);
    const double tau = alloc.total();
    out.power = tau > 0.0 ? -out.work / tau : 0.0;
    out.entropy_production =
        -out.heat_hot / engine.hot.temperature - out.heat_cold / engine.cold.temperature;
    if (out.heat_hot > 0.0) out.efficiency = -out.work / out.heat_hot;
    out.is_engine = out.heat_hot > 0.0 && out.work < 0.0;

    switch (opts.mode) {
        case AdiabatMode::numeric:
            out.friction_work_expansion =
                adiabat_evolve(lc.b, {engine.omega_h, engine.omega_c, alloc.tau_hc},
                               opts.adiabat_rtol, opts.adiabat_atol)
                    .friction_work;
            out.friction_work_compression =
                adiabat_evolve(lc.d, {engine.omega_c, engine.omega_h, alloc.tau_ch},
                               opts.adiabat_rtol, opts.adiabat_atol)
                    .friction_work;
            break;
        case AdiabatMode::sudden:
            out.friction_work_expansion =
                sudden_friction_work(lc.b, engine.omega_h, engine.omega_c);
            out.friction_work_compression =
                sudden_friction_work(lc.d, engine.omega_c, engine.omega_h);
            break;
        case AdiabatMode::quasistatic:
            break;  // frictionless idealization
    }

    const StateVector* corners[4] = {&lc.a, &lc.b, &lc.c, &lc.d};
    for (int i = 0; i < 4; ++i) {
        out.s_vn[i] = safe_entropy(*corners[i]);
        out.s_e[i] = energy_entropy(*corners[i]);
        out.t_int[i] = internal_temperature(*corners[i]);
    }
    return out;
}

namespace {

void sample_isochore(std::vector<TrajectoryPoint>& out, const StateVector& start,
                     const BathSpec& bath, double omega, double tau, double dt, double t_base,
                     Branch branch) {
    const int n = tau > 0.0 ? static_cast<int>(std::ceil(tau / dt)) : 0;
    for (int i = 0; i <= n; ++i) {
        const double tl = std::min(i * dt, tau);
        const StateVector s = isochore_map(bath, omega, tl).apply(start);
        TrajectoryPoint p;
        p.t = t_base + tl;
        p.branch = branch;
        p.state = s;
        p.s_vn = safe_entropy(s);
        p.s_e = energy_entropy(s);
        p.t_int = internal_temperature(s);
        p.heat_current = heat_current(s, bath);
        out.push_back(p);
        if (tl >= tau) break;
    }
}

void sample_adiabat(std::vector<TrajectoryPoint>& out, const StateVector& start, double omega_i,
                    double omega_f, double tau, double dt, double t_base, Branch branch,
                    const CycleOptions& opts) {
    auto push = [&](double tl, const StateVector& s, double alpha) {
        TrajectoryPoint p;
        p.t = t_base + tl;
        p.branch = branch;
        p.state = s;
        p.s_vn = safe_entropy(s);
        p.s_e = energy_entropy(s);
        p.t_int = internal_temperature(s);
        p.power = std::isfinite(alpha) ? alpha * (s.energy - s.lagrangian)
                                       : std::numeric_limits<double>::quiet_NaN();
        out.push_back(p);
    };

    if (opts.mode == AdiabatMode::sudden || tau <= 0.0) {
        const StateVector s = adiabat_map_sudden(omega_i, omega_f).apply(start);
        push(tau, s, std::numeric_limits<double>::infinity());
        return;
    }

    const double alpha = AdiabatSchedule{omega_i, omega_f, tau}.alpha();
    if (opts.mode == AdiabatMode::quasistatic) {
        const int n = static_cast<int>(std::ceil(tau / dt));
        for (int i = 1; i <= n; ++i) {
            const double tl = std::min(i * dt, tau);
            const double wt = omega_i * std::exp(alpha * tl);
            const StateVector s = adiabat_map_quasistatic(omega_i, wt, tl).apply(start);
            push(tl, s, alpha);
            if (tl >= tau) break;
        }
        return;
    }

    StateVector s = start;
    double tl = 0.0;
    while (tl < tau) {
        const double tn = std::min(tl + dt, tau);
        const AdiabatSchedule seg{s.omega, omega_i * std::exp(alpha * tn), tn - tl};
        s = adiabat_evolve(s, seg, opts.adiabat_rtol, opts.adiabat_atol).state;
        push(tn, s, alpha);
        tl = tn;
    }
}

}  // namespace

std::vector<TrajectoryPoint> trajectory_sample(const EngineSpec& engine,
                                               const TimeAllocation& alloc, double dt,
                                               const CycleOptions& opts) {
    if (!(dt > 0.0)) throw ConfigError("trajectory_sample: dt must be positive");
    const LimitCycle lc = limit_cycle(engine, alloc, opts);
    std::vector<TrajectoryPoint> out;

    double t = 0.0;
    sample_isochore(out, lc.a, engine.hot, engine.omega_h, alloc.tau_h, dt, t,
                    Branch::hot_isochore);
    t += alloc.tau_h;
    sample_adiabat(out, lc.b, engine.omega_h, engine.omega_c, alloc.tau_hc, dt, t,
                   Branch::power_adiabat, opts);
    t += alloc.tau_hc;
    sample_isochore(out, lc.c, engine.cold, engine.omega_c, alloc.tau_c, dt, t,
                    Branch::cold_isochore);
    t += alloc.tau_c;
    sample_adiabat(out, lc.d, engine.omega_c, engine.omega_h, alloc.tau_ch, dt, t,
                   Branch::compression_adiabat, opts);
    return out;
}

}  // namespace qotto
