#include "qotto/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace qotto {

namespace {

double coth_half(double omega, double temperature) {
    return 2.0 * equilibrium_energy(omega, temperature) / omega;
}

double equilibrium_or_classical(double omega, double temperature, bool high_temperature) {
    return high_temperature ? temperature : equilibrium_energy(omega, temperature);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

double g_work(const EngineSpec& engine, bool high_temperature) {
    engine.validate();
    const double c = engine.compression_ratio();
    if (high_temperature) {
        return engine.cold.temperature * (1.0 - c) + engine.hot.temperature * (1.0 - 1.0 / c);
    }
    return 0.5 * (engine.omega_h - engine.omega_c) *
           (coth_half(engine.omega_h, engine.hot.temperature) -
            coth_half(engine.omega_c, engine.cold.temperature));
}

double g_entropy(const EngineSpec& engine, bool high_temperature) {
    engine.validate();
    if (high_temperature) {
        const double c = engine.compression_ratio();
        const double r = engine.hot.temperature / engine.cold.temperature;
        return c / r + r / c - 2.0;
    }
    return 0.5 *
           (engine.omega_h / engine.hot.temperature -
            engine.omega_c / engine.cold.temperature) *
           (coth_half(engine.omega_c, engine.cold.temperature) -
            coth_half(engine.omega_h, engine.hot.temperature));
}

double f_transport(double x_c, double x_h) {
    if (!(x_c >= 0.0) || !(x_h >= 0.0)) throw ConfigError("f_transport: x must be >= 0");
    if (x_c == 0.0 || x_h == 0.0) return 0.0;
    // (e^{xc}-1)(e^{xh}-1)/(e^{xc+xh}-1) rewritten overflow-free.
    return expm1(-x_c) * expm1(-x_h) / (-expm1(-(x_c + x_h)));
}

double quasistatic_work(const EngineSpec& engine, double x_c, double x_h,
                        bool high_temperature) {
    return -g_work(engine, high_temperature) * f_transport(x_c, x_h);
}

double entropy_production_quasistatic(const EngineSpec& engine, double x_c, double x_h,
                                      bool high_temperature) {
    return g_entropy(engine, high_temperature) * f_transport(x_c, x_h);
}

IsochoreSplit optimal_time_partition(double gamma_h, double gamma_c, double tau_iso) {
    if (!(gamma_h > 0.0) || !(gamma_c > 0.0)) {
        throw ConfigError("optimal_time_partition: conductances must be positive");
    }
    if (!(tau_iso > 0.0)) throw ConfigError("optimal_time_partition: tau_iso must be positive");
    // f(tau_h) = G_h (cosh(G_c (tau_iso - tau_h)) - 1) - G_c (cosh(G_h tau_h) - 1)
    // is strictly decreasing with a sign change on (0, tau_iso).
    const auto f = [&](double tau_h) {
        return gamma_h * (std::cosh(gamma_c * (tau_iso - tau_h)) - 1.0) -
               gamma_c * (std::cosh(gamma_h * tau_h) - 1.0);
    };
    double lo = 0.0, hi = tau_iso;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * tau_iso; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double val = f(mid);
        if (val == 0.0) return {mid, tau_iso - mid};
        (val > 0.0 ? lo : hi) = mid;
    }
    const double tau_h = 0.5 * (lo + hi);
    return {tau_h, tau_iso - tau_h};
}

double optimal_isochore_allocation(double gamma, double tau_adi) {
    if (!(gamma > 0.0)) throw ConfigError("optimal_isochore_allocation: gamma must be positive");
    if (!(tau_adi >= 0.0)) throw ConfigError("optimal_isochore_allocation: tau_adi must be >= 0");
    if (tau_adi == 0.0) return 0.0;
    const double target = gamma * tau_adi;
    const auto g = [&](double x) { return 2.0 * std::sinh(x) - 2.0 * x - target; };
    double hi = std::cbrt(3.0 * target) + 1.0;  // small-x asymptotic plus slack
    while (g(hi) < 0.0) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-17 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double optimal_tau_condition_residual(double gamma_h, double gamma_c, double tau_h, double tau_c,
                                      double tau_total) {
    const double xh = gamma_h * tau_h;
    const double xc = gamma_c * tau_c;
    return gamma_c * tau_total * (std::cosh(xh) - 1.0) -
           (std::sinh(xh + xc) - std::sinh(xc) - std::sinh(xh));
}

double adiabat_time_floor(const EngineSpec& engine) {
    return 1.0 / engine.omega_c + 1.0 / engine.omega_h;
}

double quasistatic_power_bound(const EngineSpec& engine, double gamma, double tau) {
    if (!(gamma > 0.0)) throw ConfigError("quasistatic_power_bound: gamma must be positive");
    const double floor = adiabat_time_floor(engine);
    if (!(tau >= floor)) {
        throw ConfigError("quasistatic_power_bound: tau below the adiabat-time floor");
    }
    return g_work(engine) * std::tanh(0.25 * gamma * (tau - floor)) / tau;
}

namespace {

// Full-equilibration sudden cycle corners: B at hot equilibrium, D at cold.
struct SuddenCycle {
    double h_a, h_b, h_c, h_d;
};

SuddenCycle sudden_cycle(const EngineSpec& engine, bool high_temperature) {
    const double e_h =
        equilibrium_or_classical(engine.omega_h, engine.hot.temperature, high_temperature);
    const double e_c =
        equilibrium_or_classical(engine.omega_c, engine.cold.temperature, high_temperature);
    const StateVector b{e_h, 0.0, 0.0, engine.omega_h};
    const StateVector d{e_c, 0.0, 0.0, engine.omega_c};
    const StateVector c = adiabat_map_sudden(engine.omega_h, engine.omega_c).apply(b);
    const StateVector a = adiabat_map_sudden(engine.omega_c, engine.omega_h).apply(d);
    return {a.energy, b.energy, c.energy, d.energy};
}

}  // namespace

double sudden_work(const EngineSpec& engine, bool high_temperature) {
    const SuddenCycle s = sudden_cycle(engine, high_temperature);
    return (s.h_c - s.h_b) + (s.h_a - s.h_d);
}

double sudden_heat_hot(const EngineSpec& engine, bool high_temperature) {
    const SuddenCycle s = sudden_cycle(engine, high_temperature);
    return s.h_b - s.h_a;
}

double sudden_efficiency_constructive(const EngineSpec& engine, bool high_temperature) {
    return -sudden_work(engine, high_temperature) / sudden_heat_hot(engine, high_temperature);
}

double sudden_work_printed(const EngineSpec& engine, bool half_argument) {
    const double wh = engine.omega_h, wc = engine.omega_c;
    const double th = engine.hot.temperature, tc = engine.cold.temperature;
    const double f = half_argument ? 2.0 : 1.0;
    const auto coth = [](double x) { return 1.0 / std::tanh(x); };
    return (wc - wh) * (wc + wh) / (4.0 * wc * wh) *
           (wc * coth(wh / (f * th)) - wh * coth(wc / (f * tc)));
}

double sudden_efficiency(double temperature_ratio) {
    if (!(temperature_ratio >= 1.0)) throw ConfigError("sudden_efficiency: r must be >= 1");
    const double s = std::sqrt(1.0 / temperature_ratio);
    return (1.0 - s) / (2.0 + s);
}

double quasistatic_efficiency(double temperature_ratio) {
    return 1.0 - std::sqrt(1.0 / temperature_ratio);
}

double carnot_efficiency(double temperature_ratio) { return 1.0 - 1.0 / temperature_ratio; }

double friction_upper_bound(const EngineSpec& engine, bool high_temperature) {
    const double c = engine.compression_ratio();
    if (high_temperature) {
        const double r = engine.hot.temperature / engine.cold.temperature;
        return 0.5 * engine.hot.temperature * (c - 1.0) * (c - 1.0) * (1.0 / (c * c) + 1.0 / r);
    }
    const auto n_eq = [](double omega, double t) { return 1.0 / std::expm1(omega / t); };
    const double n_h = n_eq(engine.omega_h, engine.hot.temperature);
    const double n_c = n_eq(engine.omega_c, engine.cold.temperature);
    return engine.omega_h * (c - 1.0) * (c - 1.0) *
           (1.0 + c + 2.0 * c * n_c + 2.0 * n_h) / (4.0 * c * c);
}

double optimal_compression_analytic(double temperature_ratio, CompressionRegime regime) {
    if (!(temperature_ratio > 1.0)) {
        throw ConfigError("optimal_compression_analytic: need T_h > T_c");
    }
    return regime == CompressionRegime::quasistatic ? std::sqrt(temperature_ratio)
                                                    : std::pow(temperature_ratio, 0.25);
}

CompressionScan optimal_compression_scan(double omega_c, double t_h, double t_c,
                                         CompressionRegime regime, double c_lo, double c_hi,
                                         double step, bool high_temperature) {
    if (!(c_lo > 1.0) || !(c_hi > c_lo) || !(step > 0.0)) {
        throw ConfigError("optimal_compression_scan: bad grid");
    }
    CompressionScan best;
    best.work = std::numeric_limits<double>::infinity();
    for (double c = c_lo; c <= c_hi + 0.5 * step; c += step) {
        EngineSpec e;
        e.omega_c = omega_c;
        e.omega_h = c * omega_c;
        e.hot = {t_h, 1.0};
        e.cold = {t_c, 1.0};
        double w, eta;
        if (regime == CompressionRegime::quasistatic) {
            w = -g_work(e, high_temperature);  // F = 1
            eta = 1.0 - 1.0 / c;
        } else {
            w = sudden_work(e, high_temperature);
            eta = sudden_efficiency_constructive(e, high_temperature);
        }
        if (w < best.work) best = {c, w, eta};
    }
    return best;
}

namespace {

std::string classify_sweep(const EngineSpec& engine, const TimeAllocation& alloc,
                           const SweepConfig& config) {
    const double log_ratio = std::log(engine.omega_h / engine.omega_c);
    const double ratio_hc = std::abs(log_ratio / alloc.tau_hc) / engine.omega_c;
    const double ratio_ch = std::abs(log_ratio / alloc.tau_ch) / engine.omega_h;
    const bool sudden_hc = ratio_hc > config.sudden_alpha_ratio;
    const bool sudden_ch = ratio_ch > config.sudden_alpha_ratio;
    const bool quasi_hc = ratio_hc < config.quasistatic_alpha_ratio;
    const bool quasi_ch = ratio_ch < config.quasistatic_alpha_ratio;
    if (sudden_hc && sudden_ch) return "sudden_both";
    if (sudden_hc) return "sudden_hc";
    if (sudden_ch) return "sudden_ch";
    if (quasi_hc && quasi_ch) return "quasistatic";
    return "mixed";
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<SweepRecord> random_sweep(const EngineSpec& engine, const SweepConfig& config) {
    engine.validate();
    if (config.n < 1) throw ConfigError("random_sweep: n must be >= 1");
    const double tau_min = config.tau_min > 0.0 ? config.tau_min : 1e-2 / engine.omega_c;
    const double tau_max = config.tau_max > 0.0 ? config.tau_max : 1e3 / engine.omega_c;
    if (!(tau_max > tau_min) || !(tau_min > 0.0)) throw ConfigError("random_sweep: bad tau range");
    const double log_min = std::log(tau_min);
    const double log_span = std::log(tau_max) - log_min;

    std::vector<SweepRecord> records(static_cast<std::size_t>(config.n));

    const auto run_one = [&](int i) {
        SweepRecord& rec = records[static_cast<std::size_t>(i)];
        rec.index = i;
        std::mt19937_64 rng(splitmix64(config.seed ^ (0x51ed270b * static_cast<std::uint64_t>(i) +
                                                      0x2545f4914f6cdd1dULL)));
        const auto draw = [&] { return std::exp(log_min + log_span * uniform01(rng)); };
        rec.alloc = TimeAllocation{draw(), draw(), draw(), draw()};
        rec.tau_total = rec.alloc.total();
        rec.tag = classify_sweep(engine, rec.alloc, config);
        try {
            const LimitCycle lc = limit_cycle(engine, rec.alloc, config.cycle);
            const CycleMetrics m = cycle_metrics(lc, engine, rec.alloc, config.cycle);
            rec.work = m.work;
            rec.heat_hot = m.heat_hot;
            rec.heat_cold = m.heat_cold;
            rec.efficiency = m.efficiency;
            rec.power = m.power;
            rec.entropy_production = m.entropy_production;
        } catch (const std::exception&) {
            rec.ok = false;
            rec.work = rec.heat_hot = rec.heat_cold = rec.power = rec.entropy_production =
                std::numeric_limits<double>::quiet_NaN();
            rec.tag = "error";
        }
    };

    const int threads = std::max(1, config.threads);
    if (threads == 1) {
        for (int i = 0; i < config.n; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int i = t; i < config.n; i += threads) run_one(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    return records;
}

}  // namespace qotto
