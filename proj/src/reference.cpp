#include "dsgc/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dsgc/moments.hpp"
#include "dsgc/quadrature.hpp"

namespace dsgc {

MeanVar ou_stats(double b, double mu, double sigma, double u0_mean, double u0_var, double t) {
  if (!(b > 0.0)) throw std::invalid_argument("ou_stats: b must be positive");
  const double decay = std::exp(-b * t);
  return {mu + decay * (u0_mean - mu),
          decay * decay * u0_var + sigma * sigma * (1.0 - decay * decay) / (2.0 * b)};
}

MeanVar cir_stats(double b, double mu, double sigma, double u0, double t) {
  const double e1 = std::exp(-b * t), e2 = std::exp(-2.0 * b * t);
  return {mu + e1 * (u0 - mu),
          u0 * (sigma * sigma / b) * (e1 - e2) +
              mu * (sigma * sigma / (2.0 * b)) * (1.0 - e1) * (1.0 - e1)};
}

namespace {

double gl_panel(const std::function<double(double)>& f, double a, double b,
                const Rule1D& rule) {
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < rule.order(); ++i) s += rule.weights[i] * f(c + h * rule.nodes[i]);
  // rule weights sum to 1 on [-1,1]; rescale to interval length
  return s * (b - a);
}

void adaptive_rec(const std::function<double(double)>& f, double a, double b,
                  double whole, const Rule1D& rule, double tol, int depth, double& acc) {
  if (depth > 48) throw std::runtime_error("adaptive_integral: recursion limit");
  const double m = 0.5 * (a + b);
  const double left = gl_panel(f, a, m, rule), right = gl_panel(f, m, b, rule);
  if (std::abs(left + right - whole) <= tol * std::max(1.0, std::abs(left + right))) {
    acc += left + right;
    return;
  }
  adaptive_rec(f, a, m, left, rule, tol, depth + 1, acc);
  adaptive_rec(f, m, b, right, rule, tol, depth + 1, acc);
}

}  // namespace

double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         double rel_tol) {
  static const Rule1D rule = gauss_rule_1d(RuleFamily::GaussLegendre, 12);
  double acc = 0.0;
  adaptive_rec(f, a, b, gl_panel(f, a, b, rule), rule, rel_tol, 0, acc);
  return acc;
}

std::array<double, 6> stationary_cumulants_gradient(
    const std::function<double(double)>& potential, double sigma) {
  const double beta = 2.0 / (sigma * sigma);
  auto density = [&](double u) { return std::exp(-beta * potential(u)); };

  // Support where the density falls below 1e-16 of its peak at 0.
  double lo = -1.0, hi = 1.0;
  const double peak = density(0.0);
  while (density(lo) > 1e-16 * peak) lo *= 1.5;
  while (density(hi) > 1e-16 * peak) hi *= 1.5;

  const double z = adaptive_integral(density, lo, hi);
  if (!(z > 0.0) || !std::isfinite(z))
    throw std::runtime_error("stationary_cumulants_gradient: density not normalizable");

  std::array<double, 6> raw{};
  for (int n = 1; n <= 6; ++n)
    raw[n - 1] =
        adaptive_integral([&](double u) { return std::pow(u, n) * density(u); }, lo, hi) / z;
  return cumulants_1d(raw);
}

std::array<double, 6> stationary_cumulants_cubic(double sigma) {
  return stationary_cumulants_gradient(
      [](double u) { return 0.25 * u * u * u * u + 0.5 * u * u; }, sigma);
}

std::array<double, 6> mixture_cumulants_random_damping(double sigma, double lo, double hi) {
  if (!(lo > 0.0)) throw std::invalid_argument("mixture_cumulants_random_damping: lo must be > 0");
  // u | b ~ N(0, c/b) with c = sigma^2/2; E[b^-k] in closed form for U(lo, hi).
  const double c = sigma * sigma / 2.0;
  auto inv_moment = [&](int k) {
    if (lo == hi) return std::pow(lo, -k);
    if (k == 1) return std::log(hi / lo) / (hi - lo);
    return (std::pow(lo, 1 - k) - std::pow(hi, 1 - k)) / ((k - 1) * (hi - lo));
  };
  std::array<double, 6> raw{};
  double dfact = 1.0;  // (2k-1)!!
  for (int k = 1; k <= 3; ++k) {
    dfact *= 2 * k - 1;
    raw[2 * k - 1] = dfact * std::pow(c, k) * inv_moment(k);
  }
  return cumulants_1d(raw);
}

// splitmix64; decorrelates consecutive counters.
static std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double counter_gaussian(std::uint64_t seed, std::uint64_t counter) {
  // Box-Muller on two uniforms derived from (seed, counter).
  const std::uint64_t h1 = mix64(seed ^ mix64(counter));
  const std::uint64_t h2 = mix64(h1 ^ 0xD1B54A32D192ED03ULL);
  const double u1 = (static_cast<double>(h1 >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

McSeries monte_carlo(const SdeModel& model, Stepper stepper, double dtau, double T,
                     const InitialSampler& initial, long n_samples, std::uint64_t seed,
                     int repeats, int record_every) {
  if (n_samples < 1) throw std::invalid_argument("monte_carlo: need at least one sample");
  const long steps = std::lround(T / dtau);
  const int d = model.state_dim;

  McSeries out;
  for (long i = record_every; i <= steps; i += record_every) out.times.push_back(i * dtau);
  const size_t nt = out.times.size();

  std::vector<std::vector<Eigen::VectorXd>> rep_mean(repeats), rep_var(repeats);

  for (int rep = 0; rep < repeats; ++rep) {
    std::vector<Eigen::VectorXd> sum(nt, Eigen::VectorXd::Zero(d));
    std::vector<Eigen::VectorXd> sumsq(nt, Eigen::VectorXd::Zero(d));
    for (long s = 0; s < n_samples; ++s) {
      std::uint64_t ctr = 0;
      const std::uint64_t stream = mix64(seed + 0x1000003ULL * rep) ^ mix64(s + 1);
      auto draw = [&]() { return counter_gaussian(stream, ctr++); };
      Eigen::VectorXd u = initial(draw);
      Eigen::VectorXd dW(model.n_drivers);
      long clamp = 0;
      size_t rec = 0;
      for (long i = 0; i < steps; ++i) {
        for (int m = 0; m < model.n_drivers; ++m) dW[m] = std::sqrt(dtau) * draw();
        switch (stepper) {
          case Stepper::Euler:
            u = step_euler(model, u, dW, dtau);
            break;
          case Stepper::WeakRk2:
            u = step_weak_rk2(model, u, dW, dtau);
            break;
          case Stepper::MilsteinCir:
            u = step_milstein_cir(model, u, dW, dtau, &clamp);
            break;
        }
        if (rec < nt && (i + 1) % record_every == 0) {
          sum[rec] += u;
          sumsq[rec] += u.cwiseProduct(u);
          ++rec;
        }
      }
    }
    rep_mean[rep].resize(nt);
    rep_var[rep].resize(nt);
    for (size_t t = 0; t < nt; ++t) {
      rep_mean[rep][t] = sum[t] / static_cast<double>(n_samples);
      rep_var[rep][t] = sumsq[t] / static_cast<double>(n_samples) -
                        rep_mean[rep][t].cwiseProduct(rep_mean[rep][t]);
    }
  }

  out.mean.resize(nt, Eigen::VectorXd::Zero(d));
  out.variance.resize(nt, Eigen::VectorXd::Zero(d));
  out.mean_spread.resize(nt, 0.0);
  out.variance_spread.resize(nt, 0.0);
  for (size_t t = 0; t < nt; ++t) {
    for (int rep = 0; rep < repeats; ++rep) {
      out.mean[t] += rep_mean[rep][t];
      out.variance[t] += rep_var[rep][t];
    }
    out.mean[t] /= repeats;
    out.variance[t] /= repeats;
    if (repeats > 1) {
      double sm = 0.0, sv = 0.0;
      for (int rep = 0; rep < repeats; ++rep) {
        sm += std::pow(rep_mean[rep][t][0] - out.mean[t][0], 2);
        sv += std::pow(rep_var[rep][t][0] - out.variance[t][0], 2);
      }
      out.mean_spread[t] = std::sqrt(sm / (repeats - 1));
      out.variance_spread[t] = std::sqrt(sv / (repeats - 1));
    }
  }
  return out;
}

}  // namespace dsgc
