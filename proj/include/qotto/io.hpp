#pragma once

#include <string>
#include <vector>

#include "qotto/analysis.hpp"

// Deterministic text output: locale-independent, 12 significant digits,
// LF line endings, fixed column order.

namespace qotto {

/// Shortest-of-12-significant-digits rendering via std::to_chars.
std::string format_double(double v);

/// Columns: t, branch, omega, H, L, D, S_vn, S_e, T_int, heat_current, power.
/// omega_unit = 1 for absolute units, omega_c to report in units of omega_c.
std::string trajectory_csv(const std::vector<TrajectoryPoint>& points, double omega_unit = 1.0);

/// Columns: seed_index, tau_h, tau_hc, tau_c, tau_ch, tau_total, W, Qh, Qc,
/// eta, P, dSu, tag.
std::string sweep_csv(const std::vector<SweepRecord>& records, double omega_unit = 1.0);

}  // namespace qotto
