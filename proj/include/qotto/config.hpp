#pragma once

#include <string>
#include <vector>

#include "qotto/analysis.hpp"
#include "qotto/fock.hpp"

// Flat key = value run configuration.  Every experiment in the study is
// expressible in these keys; unknown keys are rejected.

namespace qotto {

struct RunConfig {
    EngineSpec engine;
    TimeAllocation alloc;
    AdiabatMode adiabat_mode = AdiabatMode::numeric;
    double adiabat_rtol = 1e-10;
    double adiabat_atol = 1e-12;
    double dt = 0.05;          // trajectory sample spacing
    int sweep_n = 1000;
    std::uint64_t seed = 1;
    double sweep_tau_min = 0.0;  // 0 = 1e-2 / omega_c
    double sweep_tau_max = 0.0;  // 0 = 1e3 / omega_c
    std::string output = "-";    // "-" = stdout
    bool omega_c_units = false;  // report frequencies/times in units of omega_c
    int oracle_n_max = 0;
    double oracle_leak_tol = 1e-10;
    double oracle_rtol = 1e-9;
    double oracle_atol = 1e-12;

    /// Set one key; throws ConfigError on unknown keys or unparsable values.
    void set(const std::string& key, const std::string& value);

    /// Parse a flat key = value file ('#' comments) and fold it in.
    void load_file(const std::string& path);

    /// Apply "key=value" strings from the command line.
    void apply_overrides(const std::vector<std::string>& overrides);

    /// All keys with their current values, one per line.
    std::string explain() const;

    void validate() const;

    CycleOptions cycle_options() const;
    fock::FockConfig fock_config() const;

    /// 1.0 in absolute units, omega_c when omega_c_units is set.
    double omega_unit() const { return omega_c_units ? engine.omega_c : 1.0; }
};

}  // namespace qotto
