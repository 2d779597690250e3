// Brute-force oracles that never touch the stationarity equation. The sign
// pattern of u_t around the optimal proxy variance lives here too.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "subgauss/errors.hpp"
#include "subgauss/kummer.hpp"
#include "subgauss/verify.hpp"

namespace subgauss {
namespace {

constexpr std::size_t kOracleGrid = 2001;
constexpr double kGoldenWidth = 1e-9;
constexpr double kRatioSeriesBelow = 1e-3;
constexpr unsigned kRatioSeriesOrder = 8;

class SubGaussianRatio {
 public:
  SubGaussianRatio(const BetaParams& p, const SeriesConfig& cfg)
      : p_(p), cfg_(cfg), kappa_(beta_cumulants(p, kRatioSeriesOrder)) {}

  // 2 (K(l) - mu l) / l^2, continuous through l = 0.
  double operator()(double l) const {
    if (std::abs(l) < kRatioSeriesBelow) {
      double sum = 0.0;
      double pow = 1.0;
      double fact = 2.0;
      for (unsigned n = 2; n <= kRatioSeriesOrder; ++n) {
        if (n > 2) fact *= n;
        sum += 2.0 * kappa_[n - 1] * pow / fact;
        pow *= l;
      }
      return sum;
    }
    const double k = log_kummer_1f1(KummerArgs(p_.alpha(), p_.sum(), l), cfg_);
    return 2.0 * (k - p_.mean() * l) / (l * l);
  }

 private:
  BetaParams p_;
  SeriesConfig cfg_;
  std::vector<double> kappa_;
};

template <class F>
double golden_max(F&& f, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

// sign(u_t(x)) through u_t / F = expm1(L1 - ln F).
double relative_u(const BetaParams& p, double sigma2, double x, const SeriesConfig& cfg) {
  return std::expm1(gaussian_log_gap(p, sigma2, x, cfg));
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(ratio * static_cast<double>(i));
  return g;
}

}  // namespace

SupRatio sup_ratio_oracle(const BetaParams& params, double lambda_max, const SeriesConfig& cfg) {
  if (!(lambda_max >= 10.0 && lambda_max <= 200.0)) {
    throw DomainError("lambda_max must lie in [10, 200]");
  }
  const SubGaussianRatio ratio(params, cfg);
  const double step = 2.0 * lambda_max / static_cast<double>(kOracleGrid - 1);

  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t i = 0; i < kOracleGrid; ++i) {
    const double l = -lambda_max + step * static_cast<double>(i);
    const double v = ratio(l);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }

  const double lo = -lambda_max + step * static_cast<double>(best == 0 ? 0 : best - 1);
  const double hi =
      -lambda_max + step * static_cast<double>(best + 1 == kOracleGrid ? best : best + 1);
  SupRatio out;
  out.lambda_max = lambda_max;
  out.argmax = golden_max(ratio, lo, hi, kGoldenWidth);
  out.sigma2 = std::max(ratio(out.argmax), best_val);
  out.boundary_hit = std::abs(out.argmax) >= 0.99 * lambda_max;
  return out;
}

SupRatio sup_ratio_oracle_auto(const BetaParams& params, const SeriesConfig& cfg) {
  SupRatio r = sup_ratio_oracle(params, 50.0, cfg);
  for (double range = 100.0; r.boundary_hit && range <= 200.0; range *= 2.0) {
    r = sup_ratio_oracle(params, range, cfg);
  }
  return r;
}

double mgf_domination_margin(const BetaParams& params, double sigma2, double lambda_max,
                             std::size_t points, const SeriesConfig& cfg) {
  if (points < 2) throw DomainError("domination grid needs at least two points");
  double worst = INFINITY;
  const double step = 2.0 * lambda_max / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double l = -lambda_max + step * static_cast<double>(i);
    worst = std::min(worst, relative_u(params, sigma2, l, cfg));
  }
  return worst;
}

double bernoulli_relative_gap(double mu, double sigma2, double lambda) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mean must lie in (0, 1)");
  const double a = std::log1p(-mu);
  const double b = std::log(mu) + lambda;
  const double log_mgf = std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
  return std::expm1(mu * lambda + 0.5 * sigma2 * lambda * lambda - log_mgf);
}

double bernoulli_domination_margin(double mu, double sigma2, double lambda_max,
                                   std::size_t points) {
  if (points < 2) throw DomainError("domination grid needs at least two points");
  double worst = INFINITY;
  const double step = 2.0 * lambda_max / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    worst = std::min(worst,
                     bernoulli_relative_gap(mu, sigma2, -lambda_max + step * static_cast<double>(i)));
  }
  return worst;
}

VerifyReport sign_structure_check(const BetaParams& params, const SolverConfig& cfg) {
  VerifyReport report;
  if (is_strictly_subgaussian(params, cfg.symmetric_tol)) {
    report.skip("sign_structure");
    return report;
  }
  const ProxyResult opt = optimal_proxy_variance(params, cfg);
  const double sign = opt.x0 > 0.0 ? 1.0 : -1.0;
  const double reach = std::abs(opt.x0);
  const double t_mid = 0.5 * (opt.t_opt + 1.0);
  const double s2_zero = interpolated_sigma2(params, 0.0);
  const double s2_mid = interpolated_sigma2(params, t_mid);
  const double s2_one = interpolated_sigma2(params, 1.0);

  // Extend the grid until u at t_mid has turned positive again.
  double far = std::max(10.0, 4.0 * reach);
  while (far < 1e6 && relative_u(params, s2_mid, sign * far, cfg.series) <= 0.0) far *= 2.0;
  const std::vector<double> grid = geometric_grid(1e-3 * std::min(reach, 1.0), far, 4000);

  double min_zero = INFINITY;
  double min_opt = INFINITY;
  std::vector<int> pattern;
  for (double g : grid) {
    const double x = sign * g;
    min_zero = std::min(min_zero, relative_u(params, s2_zero, x, cfg.series));
    min_opt = std::min(min_opt, relative_u(params, opt.sigma2_opt, x, cfg.series));
    const double um = relative_u(params, s2_mid, x, cfg.series);
    const int sg = um > 0.0 ? 1 : (um < 0.0 ? -1 : 0);
    if (sg != 0 && (pattern.empty() || pattern.back() != sg)) pattern.push_back(sg);
  }
  const double touch = std::abs(relative_u(params, opt.sigma2_opt, opt.x0, cfg.series));

  // Near 0, u_1 / F = -kappa_3 x^3 / 6 - kappa_4 x^4 / 24 + ...; the cubic term
  // sets the sign only for |x| < 4 |kappa_3 / kappa_4|.
  const auto kappa = beta_cumulants(params, 4);
  const double cubic_reach =
      kappa[3] == 0.0 ? 1e-2 : std::min(1e-2, std::abs(kappa[2] / kappa[3]));
  double max_one = -INFINITY;
  for (double g : {1e-2, 1e-1, 1.0}) {
    max_one = std::max(max_one, relative_u(params, s2_one, sign * g * cubic_reach, cfg.series));
  }

  report.add("sign_t0_positive", min_zero > 0.0, min_zero, 0.0);
  report.add("sign_topt_nonnegative", min_opt >= -1e-10, min_opt, -1e-10);
  report.add("sign_topt_touches_zero_at_x0", touch <= 1e-8, touch, 1e-8);
  const bool plus_minus_plus = pattern == std::vector<int>{1, -1, 1};
  report.add("sign_tmid_plus_minus_plus", plus_minus_plus,
             static_cast<double>(pattern.empty() ? 0 : pattern.size() - 1), 2.0);
  report.add("sign_t1_negative_near_zero", max_one < 0.0, max_one, 0.0);
  return report;
}

}  // namespace subgauss
