#include "qotto/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace qotto {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: key '" + key + "' expects a boolean, got '" + value + "'");
}

AdiabatMode parse_mode(const std::string& value) {
    if (value == "numeric") return AdiabatMode::numeric;
    if (value == "sudden") return AdiabatMode::sudden;
    if (value == "quasistatic") return AdiabatMode::quasistatic;
    throw ConfigError("config: adiabat_mode must be numeric, sudden or quasistatic, got '" +
                      value + "'");
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "omega_h") engine.omega_h = parse_double(key, value);
    else if (key == "omega_c") engine.omega_c = parse_double(key, value);
    else if (key == "T_h") engine.hot.temperature = parse_double(key, value);
    else if (key == "T_c") engine.cold.temperature = parse_double(key, value);
    else if (key == "Gamma_h") engine.hot.conductance = parse_double(key, value);
    else if (key == "Gamma_c") engine.cold.conductance = parse_double(key, value);
    else if (key == "tau_h") alloc.tau_h = parse_double(key, value);
    else if (key == "tau_hc") alloc.tau_hc = parse_double(key, value);
    else if (key == "tau_c") alloc.tau_c = parse_double(key, value);
    else if (key == "tau_ch") alloc.tau_ch = parse_double(key, value);
    else if (key == "adiabat_mode") adiabat_mode = parse_mode(value);
    else if (key == "adiabat_rtol") adiabat_rtol = parse_double(key, value);
    else if (key == "adiabat_atol") adiabat_atol = parse_double(key, value);
    else if (key == "dt") dt = parse_double(key, value);
    else if (key == "sweep_n") sweep_n = static_cast<int>(parse_int(key, value));
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "sweep_tau_min") sweep_tau_min = parse_double(key, value);
    else if (key == "sweep_tau_max") sweep_tau_max = parse_double(key, value);
    else if (key == "output") output = value;
    else if (key == "omega_c_units") omega_c_units = parse_bool(key, value);
    else if (key == "oracle_n_max") oracle_n_max = static_cast<int>(parse_int(key, value));
    else if (key == "oracle_leak_tol") oracle_leak_tol = parse_double(key, value);
    else if (key == "oracle_rtol") oracle_rtol = parse_double(key, value);
    else if (key == "oracle_atol") oracle_atol = parse_double(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config: " << path << ":" << lineno << ": expected key = value";
            throw ConfigError(msg.str());
        }
        set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }
}

void RunConfig::apply_overrides(const std::vector<std::string>& overrides) {
    for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: override '" + item + "' is not of the form key=value");
        }
        set(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
}

std::string RunConfig::explain() const {
    std::ostringstream out;
    out.precision(17);
    out << "omega_h = " << engine.omega_h << "\n"
        << "omega_c = " << engine.omega_c << "\n"
        << "T_h = " << engine.hot.temperature << "\n"
        << "T_c = " << engine.cold.temperature << "\n"
        << "Gamma_h = " << engine.hot.conductance << "\n"
        << "Gamma_c = " << engine.cold.conductance << "\n"
        << "tau_h = " << alloc.tau_h << "\n"
        << "tau_hc = " << alloc.tau_hc << "\n"
        << "tau_c = " << alloc.tau_c << "\n"
        << "tau_ch = " << alloc.tau_ch << "\n"
        << "adiabat_mode = " << to_string(adiabat_mode) << "\n"
        << "adiabat_rtol = " << adiabat_rtol << "\n"
        << "adiabat_atol = " << adiabat_atol << "\n"
        << "dt = " << dt << "\n"
        << "sweep_n = " << sweep_n << "\n"
        << "seed = " << seed << "\n"
        << "sweep_tau_min = " << sweep_tau_min << " # 0 = 1e-2/omega_c\n"
        << "sweep_tau_max = " << sweep_tau_max << " # 0 = 1e3/omega_c\n"
        << "output = " << output << "\n"
        << "omega_c_units = " << (omega_c_units ? "true" : "false") << "\n"
        << "oracle_n_max = " << oracle_n_max << " # 0 = adaptive\n"
        << "oracle_leak_tol = " << oracle_leak_tol << "\n"
        << "oracle_rtol = " << oracle_rtol << "\n"
        << "oracle_atol = " << oracle_atol << "\n";
    return out.str();
}

void RunConfig::validate() const {
    engine.validate();
    alloc.validate();
    if (!(dt > 0.0)) throw ConfigError("config: dt must be positive");
    if (sweep_n < 1) throw ConfigError("config: sweep_n must be >= 1");
    if (!(adiabat_rtol > 0.0) || !(adiabat_atol > 0.0)) {
        throw ConfigError("config: tolerances must be positive");
    }
}

CycleOptions RunConfig::cycle_options() const {
    return {adiabat_mode, adiabat_rtol, adiabat_atol};
}

fock::FockConfig RunConfig::fock_config() const {
    fock::FockConfig cfg;
    cfg.n_max = oracle_n_max;
    cfg.leak_tol = oracle_leak_tol;
    cfg.rtol = oracle_rtol;
    cfg.atol = oracle_atol;
    return cfg;
}

}  // namespace qotto
