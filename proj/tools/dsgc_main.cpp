#include <CLI11.hpp>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dsgc/config.hpp"
#include "dsgc/csv.hpp"
#include "dsgc/engine.hpp"
#include "dsgc/moments.hpp"
#include "dsgc/reference.hpp"

namespace fs = std::filesystem;
using namespace dsgc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

RunConfig load_config(const std::string& config_path, const std::string& preset_name) {
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
  }
  if (!preset_name.empty()) return preset(preset_name).config;
  throw std::invalid_argument("either --config or --preset is required");
}

ReferenceFn load_reference(const std::string& preset_name) {
  if (preset_name.empty()) return nullptr;
  return preset(preset_name).reference;
}

void write_run_outputs(const fs::path& out_dir, const StatSeries& series, int dimension,
                       const ReferenceFn& reference) {
  fs::create_directories(out_dir);
  {
    std::ofstream os(out_dir / "stats.csv");
    write_stats_csv(os, series, dimension);
  }
  {
    std::ofstream os(out_dir / "diagnostics.csv");
    write_diagnostics_csv(os, series);
  }
  if (reference) {
    std::ofstream os(out_dir / "errors.csv");
    write_error_csv(os, error_series(series, reference));
  }
}

int run_model_dimension(const RunConfig& cfg) {
  return make_model(cfg.model_name, cfg.params).state_dim;
}

InitialSampler sampler_from_config(const RunConfig& cfg) {
  return [cfg](const std::function<double()>& gaussian) {
    Eigen::VectorXd u(cfg.initial.size());
    for (size_t i = 0; i < cfg.initial.size(); ++i) {
      const CoordInitial& spec = cfg.initial[i];
      switch (spec.kind) {
        case CoordInitial::Kind::Point:
          u[i] = spec.p1;
          break;
        case CoordInitial::Kind::Normal:
          u[i] = spec.p1 + std::sqrt(spec.p2) * gaussian();
          break;
        case CoordInitial::Kind::Uniform: {
          // uniform via the Gaussian CDF keeps the stream single-typed
          double z = gaussian();
          double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
          u[i] = spec.p1 + (spec.p2 - spec.p1) * cdf;
          break;
        }
      }
    }
    return u;
  };
}

int cmd_run(const std::string& config_path, const std::string& preset_name,
            const std::string& out_dir) {
  RunConfig cfg = load_config(config_path, preset_name);
  StatSeries series = run(cfg);
  write_run_outputs(out_dir, series, run_model_dimension(cfg), load_reference(preset_name));
  return kExitOk;
}

int cmd_sweep(const std::string& preset_name, const std::string& axis,
              const std::vector<double>& values, const std::string& out_dir,
              std::uint64_t seed) {
  ExperimentPreset p = preset(preset_name);
  fs::create_directories(out_dir);

  std::ofstream summary(fs::path(out_dir) / "summary.csv");
  summary << "value,eps_mean,eps_var,wall_time\n";

  bool any_failed = false;
  for (double value : values) {
    RunConfig cfg = p.config;
    double t0 = now_seconds();
    double eps_mean = -1.0, eps_var = -1.0;
    try {
      if (axis == "M_samp") {
        SdeModel model = make_model(cfg.model_name, cfg.params);
        McSeries mc = monte_carlo(model, cfg.stepper, cfg.delta_tau, cfg.T,
                                  sampler_from_config(cfg), static_cast<long>(value), seed,
                                  20);
        if (p.reference) {
          MeanVar ref = p.reference(mc.times.back());
          eps_mean = std::abs((mc.mean.back()[0] - ref.mean) / ref.mean);
          eps_var = std::abs((mc.variance.back()[0] - ref.variance) / ref.variance);
        }
      } else {
        if (axis == "N")
          cfg.constraint_degree = static_cast<int>(std::lround(value));
        else if (axis == "lambda")
          cfg.forcing_level = static_cast<int>(std::lround(value));
        else if (axis == "K")
          cfg.forcing_modes = static_cast<int>(std::lround(value));
        else if (axis == "delta_t")
          cfg.delta_t = value;
        else
          throw std::invalid_argument("sweep: unknown axis '" + axis + "'");
        StatSeries series = run(cfg);
        std::ostringstream label;
        label << axis << "_" << value;
        fs::path run_dir = fs::path(out_dir) / label.str();
        write_run_outputs(run_dir, series, run_model_dimension(cfg), p.reference);
        if (p.reference) {
          ErrorSeries err = error_series(series, p.reference);
          eps_mean = err.mean_error.back();
          eps_var = err.var_error.back();
        }
      }
    } catch (const std::exception& e) {
      std::cerr << "sweep value " << value << " failed: " << e.what() << "\n";
      any_failed = true;
      continue;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.6f\n", value, eps_mean, eps_var,
                  now_seconds() - t0);
    summary << buf;
  }
  return any_failed ? kExitNumerical : kExitOk;
}

int cmd_table(const std::string& which, const std::string& out_path) {
  std::ofstream os(out_path);
  if (!os) throw std::invalid_argument("cannot open output file: " + out_path);

  auto emit_row = [&os](const std::string& label, const std::array<double, 6>& k) {
    os << label;
    for (double v : k) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), ",%.6g", v);
      os << buf;
    }
    os << "\n";
  };

  if (which == "table2") {
    os << "row,k1,k2,k3,k4,k5,k6\n";
    for (int N : {4, 6})
      emit_row("dsgc_N" + std::to_string(N), ou_random_damping_cumulants(N));
    emit_row("fokker_planck", mixture_cumulants_random_damping(4.0, 1.0, 3.0));
  } else if (which == "table3") {
    os << "row,k1,k2,k3,k4,k5,k6\n";
    for (int N : {4, 6, 8}) {
      RunConfig cfg = preset("ex2_cubic").config;
      cfg.constraint_degree = N;
      StatSeries series = run(cfg);
      emit_row("dsgc_N" + std::to_string(N), series.cumulants.back());
    }
    emit_row("fokker_planck", stationary_cumulants_cubic(2.0));
  } else if (which == "table4_dsgc_column") {
    os << "row,eps_var,wall_time,time_ratio\n";
    ExperimentPreset p = preset("ex3_cir");

    // Internal DSGC-vs-MC wall-clock ratios; the MC M_samp=8e4 run is the
    // unit of time.
    RunConfig mc_cfg = p.config;
    mc_cfg.T = 1.0;
    double t0 = now_seconds();
    SdeModel model = make_model(mc_cfg.model_name, mc_cfg.params);
    McSeries mc = monte_carlo(model, Stepper::MilsteinCir, mc_cfg.delta_tau, mc_cfg.T,
                              sampler_from_config(mc_cfg), 80000, 7, 5);
    double mc_time = now_seconds() - t0;
    MeanVar ref = cir_stats(2.0, 0.6, 0.5, 1.0, mc.times.back());
    char buf[200];
    std::snprintf(buf, sizeof(buf), "mc_80000,%.6g,%.6f,1.0\n",
                  std::abs((mc.variance.back()[0] - ref.variance) / ref.variance), mc_time);
    os << buf;

    for (int N : {3, 4, 5, 6}) {
      RunConfig cfg = p.config;
      cfg.T = 1.0;
      cfg.constraint_degree = N;
      t0 = now_seconds();
      StatSeries series = run(cfg);
      double dt = now_seconds() - t0;
      ErrorSeries err = error_series(series, [](double t) {
        return cir_stats(2.0, 0.6, 0.5, 1.0, t);
      });
      std::snprintf(buf, sizeof(buf), "dsgc_N%d,%.6g,%.6f,%.4f\n", N, err.var_error.back(),
                    dt, dt / mc_time);
      os << buf;
    }
  } else {
    throw std::invalid_argument("table: unknown table '" + which + "'");
  }
  return kExitOk;
}

int cmd_mc(const std::string& config_path, const std::string& preset_name,
           const std::string& out_dir, long samples, std::uint64_t seed, int repeats) {
  RunConfig cfg = load_config(config_path, preset_name);
  SdeModel model = make_model(cfg.model_name, cfg.params);
  McSeries mc = monte_carlo(model, cfg.stepper, cfg.delta_tau, cfg.T,
                            sampler_from_config(cfg), samples, seed, repeats);
  fs::create_directories(out_dir);
  std::ofstream os(fs::path(out_dir) / "mc_stats.csv");
  os << "t";
  for (int i = 1; i <= model.state_dim; ++i) os << ",mean_" << i;
  for (int i = 1; i <= model.state_dim; ++i) os << ",var_" << i;
  os << ",mean_spread,var_spread\n";
  for (size_t t = 0; t < mc.times.size(); ++t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", mc.times[t]);
    os << buf;
    for (int i = 0; i < model.state_dim; ++i) {
      std::snprintf(buf, sizeof(buf), ",%.17g", mc.mean[t][i]);
      os << buf;
    }
    for (int i = 0; i < model.state_dim; ++i) {
      std::snprintf(buf, sizeof(buf), ",%.17g", mc.variance[t][i]);
      os << buf;
    }
    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g\n", mc.mean_spread[t], mc.variance_spread[t]);
    os << buf;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical sparse grid collocation driver"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_dir = "out", axis, table_name = "table3";
  std::string out_file = "table.csv";
  std::vector<double> values;
  std::uint64_t seed = 0;
  long samples = 10000;
  int repeats = 1;

  auto* c_run = app.add_subcommand("run", "run one configuration, write stats/diagnostics CSVs");
  c_run->add_option("--config", config_path, "flat key=value configuration file");
  c_run->add_option("--preset", preset_name, "experiment preset name");
  c_run->add_option("--out", out_dir, "output directory");

  auto* c_sweep = app.add_subcommand("sweep", "run a convergence sweep along one axis");
  c_sweep->add_option("--preset", preset_name, "experiment preset name")->required();
  c_sweep->add_option("--axis", axis, "one of N, lambda, delta_t, K, M_samp")->required();
  c_sweep->add_option("--values", values, "comma-separated axis values")
      ->required()
      ->delimiter(',');
  c_sweep->add_option("--out", out_dir, "output directory");
  c_sweep->add_option("--seed", seed, "Monte Carlo seed (M_samp axis)");

  auto* c_table = app.add_subcommand("table", "emit a benchmark table CSV");
  c_table->add_option("--which", table_name, "table2 | table3 | table4_dsgc_column")
      ->required();
  c_table->add_option("--out", out_file, "output CSV path");

  auto* c_mc = app.add_subcommand("mc", "Monte Carlo baseline for a configuration");
  c_mc->add_option("--config", config_path, "flat key=value configuration file");
  c_mc->add_option("--preset", preset_name, "experiment preset name");
  c_mc->add_option("--out", out_dir, "output directory");
  c_mc->add_option("--samples", samples, "sample count");
  c_mc->add_option("--seed", seed, "generator seed");
  c_mc->add_option("--repeats", repeats, "independent repetitions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_run->parsed()) return cmd_run(config_path, preset_name, out_dir);
    if (c_sweep->parsed()) return cmd_sweep(preset_name, axis, values, out_dir, seed);
    if (c_table->parsed()) return cmd_table(table_name, out_file);
    if (c_mc->parsed()) return cmd_mc(config_path, preset_name, out_dir, samples, seed, repeats);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
