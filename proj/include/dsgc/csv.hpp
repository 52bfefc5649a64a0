#pragma once

#include <iosfwd>
#include <string>

#include "dsgc/engine.hpp"

namespace dsgc {

/// stats.csv: t, mean_1..mean_d, var_1..var_d, k1..k6 (cumulant cells
/// filled only on rows that coincide with restart times). Values printed
/// with 17 significant digits.
void write_stats_csv(std::ostream& os, const StatSeries& series, int dimension);

/// diagnostics.csv: t_j, cond_A, l1_objective, residual, node_count,
/// lp_iters, fallbacks, clamps.
void write_diagnostics_csv(std::ostream& os, const StatSeries& series);

void write_error_csv(std::ostream& os, const ErrorSeries& errors);

}  // namespace dsgc
