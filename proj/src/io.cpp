#include "qotto/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qotto {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& points, double omega_unit) {
    const double u = omega_unit;
    std::ostringstream out;
    out << "t,branch,omega,H,L,D,S_vn,S_e,T_int,heat_current,power\n";
    for (const TrajectoryPoint& p : points) {
        out << format_double(p.t * u) << ',' << to_string(p.branch) << ','
            << format_double(p.state.omega / u) << ',' << format_double(p.state.energy / u) << ','
            << format_double(p.state.lagrangian / u) << ','
            << format_double(p.state.correlation) << ',' << format_double(p.s_vn) << ','
            << format_double(p.s_e) << ',' << format_double(p.t_int / u) << ','
            << format_double(p.heat_current / (u * u)) << ','
            << format_double(p.power / (u * u)) << '\n';
    }
    return out.str();
}

std::string sweep_csv(const std::vector<SweepRecord>& records, double omega_unit) {
    const double u = omega_unit;
    std::ostringstream out;
    out << "seed_index,tau_h,tau_hc,tau_c,tau_ch,tau_total,W,Qh,Qc,eta,P,dSu,tag\n";
    for (const SweepRecord& r : records) {
        const double eta = r.efficiency ? *r.efficiency : std::nan("");
        out << r.index << ',' << format_double(r.alloc.tau_h * u) << ','
            << format_double(r.alloc.tau_hc * u) << ',' << format_double(r.alloc.tau_c * u) << ','
            << format_double(r.alloc.tau_ch * u) << ',' << format_double(r.tau_total * u) << ','
            << format_double(r.work / u) << ',' << format_double(r.heat_hot / u) << ','
            << format_double(r.heat_cold / u) << ',' << format_double(eta) << ','
            << format_double(r.power / (u * u)) << ',' << format_double(r.entropy_production)
            << ',' << r.tag << '\n';
    }
    return out.str();
}

}  // namespace qotto
