#include "dsgc/csv.hpp"

#include <cmath>
#include <ostream>

namespace dsgc {

namespace {

void put(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

void write_stats_csv(std::ostream& os, const StatSeries& series, int dimension) {
  os << "t";
  for (int i = 1; i <= dimension; ++i) os << ",mean_" << i;
  for (int i = 1; i <= dimension; ++i) os << ",var_" << i;
  for (int i = 1; i <= 6; ++i) os << ",k" << i;
  os << "\n";

  size_t ci = 0;
  for (size_t r = 0; r < series.times.size(); ++r) {
    put(os, series.times[r]);
    for (int i = 0; i < dimension; ++i) {
      os << ",";
      put(os, series.mean[r][i]);
    }
    for (int i = 0; i < dimension; ++i) {
      os << ",";
      put(os, series.variance[r][i]);
    }
    while (ci < series.cumulant_times.size() &&
           series.cumulant_times[ci] < series.times[r] - 1e-12)
      ++ci;
    const bool at_restart = ci < series.cumulant_times.size() &&
                            std::abs(series.cumulant_times[ci] - series.times[r]) <= 1e-12;
    for (int i = 0; i < 6; ++i) {
      os << ",";
      if (at_restart) put(os, series.cumulants[ci][i]);
    }
    os << "\n";
  }
}

void write_diagnostics_csv(std::ostream& os, const StatSeries& series) {
  os << "t_j,cond_A,l1_objective,residual,node_count,lp_iters,fallbacks,clamps\n";
  for (const RestartRecord& rec : series.diagnostics) {
    put(os, rec.t);
    os << ",";
    put(os, rec.rule.condition_number);
    os << ",";
    put(os, rec.rule.l1_objective);
    os << ",";
    put(os, rec.rule.residual);
    os << "," << rec.rule.node_count << "," << rec.rule.lp_iterations << ","
       << rec.rule.fallbacks.size() << "," << rec.clamp_events << "\n";
  }
}

void write_error_csv(std::ostream& os, const ErrorSeries& errors) {
  os << "t,eps_mean,eps_var,mean_absolute,var_absolute\n";
  for (size_t i = 0; i < errors.times.size(); ++i) {
    put(os, errors.times[i]);
    os << ",";
    put(os, errors.mean_error[i]);
    os << ",";
    put(os, errors.var_error[i]);
    os << "," << (errors.mean_absolute[i] ? 1 : 0) << "," << (errors.var_absolute[i] ? 1 : 0)
       << "\n";
  }
}

}  // namespace dsgc
