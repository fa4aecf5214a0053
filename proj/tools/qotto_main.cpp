// qotto: simulator and optimizer for the harmonic-oscillator quantum Otto
// engine.  Subcommands: simulate, limit-cycle, sweep, analyze, oracle-check.
// Exit codes: 0 success, 2 config error, 3 solver error, 4 oracle-check
// failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qotto/config.hpp"
#include "qotto/fock.hpp"
#include "qotto/io.hpp"

using nlohmann::json;
using namespace qotto;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string output;
    bool explain = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("config", args.config_path, "flat key = value configuration file");
    cmd->add_option("--set", args.sets, "override a config key (key=value, repeatable)");
    cmd->add_option("-o,--output", args.output, "output path, - for stdout");
    cmd->add_flag("--explain", args.explain, "print the effective configuration and exit");
}

RunConfig build_config(const CommonArgs& args) {
    RunConfig cfg;
    if (!args.config_path.empty()) cfg.load_file(args.config_path);
    cfg.apply_overrides(args.sets);
    if (!args.output.empty()) cfg.output = args.output;
    cfg.validate();
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + cfg.output + "'");
    out << text;
}

int default_threads() {
    if (const char* env = std::getenv("QOTTO_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

json state_json(const StateVector& s, double u) {
    return {{"omega", s.omega / u},
            {"H", s.energy / u},
            {"L", s.lagrangian / u},
            {"D", s.correlation},
            {"S_vn", von_neumann_entropy(s)},
            {"S_e", energy_entropy(s)},
            {"T_int", internal_temperature(s) / u}};
}

json config_json(const RunConfig& cfg) {
    return {{"omega_h", cfg.engine.omega_h},
            {"omega_c", cfg.engine.omega_c},
            {"T_h", cfg.engine.hot.temperature},
            {"T_c", cfg.engine.cold.temperature},
            {"Gamma_h", cfg.engine.hot.conductance},
            {"Gamma_c", cfg.engine.cold.conductance},
            {"tau_h", cfg.alloc.tau_h},
            {"tau_hc", cfg.alloc.tau_hc},
            {"tau_c", cfg.alloc.tau_c},
            {"tau_ch", cfg.alloc.tau_ch},
            {"adiabat_mode", std::string(to_string(cfg.adiabat_mode))},
            {"units", cfg.omega_c_units ? "omega_c" : "absolute"}};
}

int cmd_simulate(const RunConfig& cfg) {
    const auto points = trajectory_sample(cfg.engine, cfg.alloc, cfg.dt, cfg.cycle_options());
    emit(cfg, trajectory_csv(points, cfg.omega_unit()));
    return 0;
}

int cmd_limit_cycle(const RunConfig& cfg) {
    const double u = cfg.omega_unit();
    const LimitCycle lc = limit_cycle(cfg.engine, cfg.alloc, cfg.cycle_options());
    const CycleMetrics m = cycle_metrics(lc, cfg.engine, cfg.alloc, cfg.cycle_options());

    // Convergence diagnostics: iterate from a cold-equilibrium start.
    const StateVector v0{equilibrium_energy(cfg.engine.omega_c, cfg.engine.cold.temperature), 0.0,
                         0.0, cfg.engine.omega_h};
    const auto iterates =
        iterate_to_limit(cfg.engine, cfg.alloc, v0, 10000, 1e-10, cfg.cycle_options());

    double rho_effective = 0.0;
    if (iterates.size() >= 3) {
        const auto dist = [&](const StateVector& s) {
            return energy_norm({s.energy - lc.a.energy, s.lagrangian - lc.a.lagrangian,
                                s.correlation - lc.a.correlation, s.omega});
        };
        const double d1 = dist(iterates[iterates.size() - 2]);
        const double d2 = dist(iterates[iterates.size() - 3]);
        if (d2 > 0.0) rho_effective = d1 / d2;
    }

    json out;
    out["config"] = config_json(cfg);
    out["corners"] = {{"A", state_json(lc.a, u)},
                      {"B", state_json(lc.b, u)},
                      {"C", state_json(lc.c, u)},
                      {"D", state_json(lc.d, u)}};
    json mat = json::array();
    for (int r = 0; r < 3; ++r) {
        mat.push_back({lc.map.m(r, 0), lc.map.m(r, 1), lc.map.m(r, 2)});
    }
    out["cycle_map"] = {{"m", mat},
                        {"b", {lc.map.b[0] / u, lc.map.b[1] / u, lc.map.b[2]}},
                        {"spectral_radius", lc.spectral_radius}};
    out["metrics"] = {{"W", m.work / u},
                      {"Q_h", m.heat_hot / u},
                      {"Q_c", m.heat_cold / u},
                      {"P", m.power / (u * u)},
                      {"dS_u", m.entropy_production},
                      {"eta", m.efficiency ? json(*m.efficiency) : json()},
                      {"is_engine", m.is_engine},
                      {"W_f_expansion", m.friction_work_expansion / u},
                      {"W_f_compression", m.friction_work_compression / u}};
    out["convergence"] = {{"start", "cold_equilibrium"},
                          {"cycles", iterates.size() - 1},
                          {"tolerance", 1e-10},
                          {"rho_effective", rho_effective}};
    emit(cfg, out.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    SweepConfig sweep;
    sweep.n = cfg.sweep_n;
    sweep.seed = cfg.seed;
    sweep.tau_min = cfg.sweep_tau_min;
    sweep.tau_max = cfg.sweep_tau_max;
    sweep.cycle = cfg.cycle_options();
    sweep.threads = default_threads();
    const auto records = random_sweep(cfg.engine, sweep);
    emit(cfg, sweep_csv(records, cfg.omega_unit()));
    return 0;
}

int cmd_analyze(const RunConfig& cfg) {
    const EngineSpec& e = cfg.engine;
    const double r = e.hot.temperature / e.cold.temperature;
    const double x_h = e.hot.conductance * cfg.alloc.tau_h;
    const double x_c = e.cold.conductance * cfg.alloc.tau_c;
    const double tau_adi = cfg.alloc.tau_hc + cfg.alloc.tau_ch;
    const double gamma = e.hot.conductance;

    json out;
    out["config"] = config_json(cfg);
    out["g_work"] = {{"exact", g_work(e)}, {"high_T", g_work(e, true)}};
    out["g_entropy"] = {{"exact", g_entropy(e)}, {"high_T", g_entropy(e, true)}};
    out["transport"] = {{"x_c", x_c},
                        {"x_h", x_h},
                        {"F", f_transport(x_c, x_h)},
                        {"W_q", quasistatic_work(e, x_c, x_h)},
                        {"dS_u", entropy_production_quasistatic(e, x_c, x_h)}};

    const auto split = optimal_time_partition(e.hot.conductance, e.cold.conductance,
                                              cfg.alloc.tau_h + cfg.alloc.tau_c);
    out["optimal_partition"] = {{"tau_iso", cfg.alloc.tau_h + cfg.alloc.tau_c},
                                {"tau_h", split.tau_h},
                                {"tau_c", split.tau_c}};

    if (gamma > 0.0) {
        const double x = optimal_isochore_allocation(gamma, tau_adi);
        const double residual = 2.0 * std::sinh(x) - 2.0 * x - gamma * tau_adi;
        out["optimal_isochore_allocation"] = {
            {"x", x},
            {"tau_h", x / gamma},
            {"residual", residual},
            {"general_condition_residual",
             optimal_tau_condition_residual(gamma, gamma, x / gamma, x / gamma,
                                            tau_adi + 2.0 * x / gamma)}};

        const double floor = adiabat_time_floor(e);
        json curve = json::array();
        for (const double mult : {1.2, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0}) {
            curve.push_back(
                {{"tau", mult * floor}, {"P_q", quasistatic_power_bound(e, gamma, mult * floor)}});
        }
        out["power_bound"] = {{"floor", floor}, {"curve", curve}};
    }

    out["sudden"] = {{"W_constructive", sudden_work(e)},
                     {"W_constructive_high_T", sudden_work(e, true)},
                     {"W_printed_half_argument", sudden_work_printed(e, true)},
                     {"W_printed_full_argument", sudden_work_printed(e, false)},
                     {"Q_h", sudden_heat_hot(e)},
                     {"eta_constructive", sudden_efficiency_constructive(e)},
                     {"eta_formula", sudden_efficiency(r)}};

    const double alpha_hc = std::log(e.omega_c / e.omega_h) / cfg.alloc.tau_hc;
    out["friction"] = {
        {"alpha_hc", alpha_hc},
        {"W_f_closed_form",
         friction_work_closed_form(e.omega_h, e.omega_c, e.hot.temperature, e.cold.temperature,
                                   alpha_hc, false)},
        {"W_f_closed_form_high_T",
         friction_work_closed_form(e.omega_h, e.omega_c, e.hot.temperature, e.cold.temperature,
                                   alpha_hc, true)},
        {"upper_bound", friction_upper_bound(e)},
        {"upper_bound_high_T", friction_upper_bound(e, true)},
        {"upper_bound_constructive", sudden_work(e, true) - quasistatic_work(e, 50.0, 50.0, true)}};

    out["efficiency_hierarchy"] = {{"r", r},
                                   {"eta_s", sudden_efficiency(r)},
                                   {"eta_q", quasistatic_efficiency(r)},
                                   {"eta_c", carnot_efficiency(r)}};

    json optimal_c = {{"quasistatic_analytic",
                       optimal_compression_analytic(r, CompressionRegime::quasistatic)},
                      {"sudden_analytic", optimal_compression_analytic(r, CompressionRegime::sudden)}};
    const double c_hi = std::max(1.3, std::min(4.0, r));
    const auto scan_q = optimal_compression_scan(e.omega_c, e.hot.temperature,
                                                 e.cold.temperature,
                                                 CompressionRegime::quasistatic, 1.05, c_hi, 0.01);
    const auto scan_s = optimal_compression_scan(e.omega_c, e.hot.temperature,
                                                 e.cold.temperature, CompressionRegime::sudden,
                                                 1.05, c_hi, 0.01);
    optimal_c["quasistatic_scan"] = {{"C", scan_q.c_opt}, {"W", scan_q.work}, {"eta", scan_q.efficiency}};
    optimal_c["sudden_scan"] = {{"C", scan_s.c_opt}, {"W", scan_s.work}, {"eta", scan_s.efficiency}};
    out["optimal_compression"] = optimal_c;

    emit(cfg, out.dump(2) + "\n");
    return 0;
}

int cmd_oracle_check(const RunConfig& cfg) {
    const EngineSpec& e = cfg.engine;
    const fock::FockConfig fcfg = cfg.fock_config();
    int failures = 0;
    json checks = json::array();

    const auto record = [&](const std::string& name, double measured, double tol) {
        const bool ok = measured <= tol;
        if (!ok) ++failures;
        std::cerr << (ok ? "[ok]   " : "[FAIL] ") << name << ": " << measured
                  << " (tolerance " << tol << ")\n";
        checks.push_back({{"name", name}, {"measured", measured}, {"tolerance", tol}, {"pass", ok}});
    };

    // Single-branch cross-checks from cold equilibrium.
    {
        const double omega_ref = std::sqrt(e.omega_h * e.omega_c);
        const int dim = cfg.oracle_n_max > 0 ? cfg.oracle_n_max : 96;
        const fock::FockSpace space(dim, omega_ref);
        fock::Matrix rho = space.thermal_state(e.omega_h, e.hot.temperature);
        StateVector s0 = fock::expectations(space, rho, e.omega_h);

        fock::evolve_isochore(space, rho, e.hot, e.omega_h, cfg.alloc.tau_h, fcfg);
        const StateVector oracle_iso = fock::expectations(space, rho, e.omega_h);
        const StateVector fast_iso = isochore_map(e.hot, e.omega_h, cfg.alloc.tau_h).apply(s0);
        record("isochore expectations (rel)",
               energy_norm({oracle_iso.energy - fast_iso.energy,
                            oracle_iso.lagrangian - fast_iso.lagrangian,
                            oracle_iso.correlation - fast_iso.correlation, e.omega_h}) /
                   energy_norm(fast_iso),
               1e-6);

        const double s_before = fock::entropy_eigenvalues(rho);
        fock::evolve_adiabat(space, rho, {e.omega_h, e.omega_c, cfg.alloc.tau_hc}, fcfg);
        const StateVector oracle_adi = fock::expectations(space, rho, e.omega_c);
        const StateVector fast_adi =
            adiabat_map_numeric({e.omega_h, e.omega_c, cfg.alloc.tau_hc}, cfg.adiabat_rtol,
                                cfg.adiabat_atol)
                .apply(oracle_iso);
        record("adiabat expectations (rel)",
               energy_norm({oracle_adi.energy - fast_adi.energy,
                            oracle_adi.lagrangian - fast_adi.lagrangian,
                            oracle_adi.correlation - fast_adi.correlation, e.omega_c}) /
                   energy_norm(fast_adi),
               1e-6);
        record("adiabat S_vn invariance", std::abs(fock::entropy_eigenvalues(rho) - s_before),
               1e-8);
    }

    // Limit-cycle corners, three-variable path vs brute force.
    const LimitCycle lc = limit_cycle(e, cfg.alloc, cfg.cycle_options());
    const fock::OracleCorners oc = fock::oracle_limit_cycle(e, cfg.alloc, fcfg);
    const auto corner_err = [](const StateVector& x, const StateVector& y) {
        return energy_norm({x.energy - y.energy, x.lagrangian - y.lagrangian,
                            x.correlation - y.correlation, x.omega}) /
               energy_norm(y);
    };
    record("corner A (rel)", corner_err(oc.a, lc.a), 1e-5);
    record("corner B (rel)", corner_err(oc.b, lc.b), 1e-5);
    record("corner C (rel)", corner_err(oc.c, lc.c), 1e-5);
    record("corner D (rel)", corner_err(oc.d, lc.d), 1e-5);

    json out;
    out["config"] = config_json(cfg);
    out["oracle"] = {{"dimension", oc.dim}, {"cycles", oc.cycles}};
    out["checks"] = checks;
    out["pass"] = failures == 0;
    emit(cfg, out.dump(2) + "\n");
    return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic-oscillator quantum Otto engine simulator"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* simulate = app.add_subcommand("simulate", "trajectory CSV of one limit cycle");
    CLI::App* limit = app.add_subcommand("limit-cycle", "limit-cycle JSON report");
    CLI::App* sweep = app.add_subcommand("sweep", "randomized time-allocation sweep CSV");
    CLI::App* analyze = app.add_subcommand("analyze", "closed-form results JSON");
    CLI::App* oracle = app.add_subcommand("oracle-check", "Fock-space cross-validation");
    for (CLI::App* cmd : {simulate, limit, sweep, analyze, oracle}) add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        const RunConfig cfg = build_config(args);
        if (args.explain) {
            std::cout << cfg.explain();
            return 0;
        }
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (limit->parsed()) return cmd_limit_cycle(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (analyze->parsed()) return cmd_analyze(cfg);
        if (oracle->parsed()) return cmd_oracle_check(cfg);
        return 2;
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
}
