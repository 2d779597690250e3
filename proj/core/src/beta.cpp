#include "subgauss/beta.hpp"

#include <cmath>
#include <string>

#include "subgauss/errors.hpp"

namespace subgauss {
namespace {

constexpr double kSeriesBelow = 1e-2;
constexpr unsigned kCumulantOrder = 10;
constexpr double kBracketMin = 1e-8;
constexpr double kBracketMax = 1e6;
constexpr double kBisectWidth = 1e-3;
constexpr double kStepRelTol = 1e-14;

TranscendentalValue cumulant_expansion(const BetaParams& params, double x) {
  const auto kappa = beta_cumulants(params, kCumulantOrder);
  TranscendentalValue v;
  // kappa[n-1] holds kappa_n; xn tracks x^(n-2), fact tracks (n-2)!.
  double xn = 1.0;
  double fact = 1.0;
  for (unsigned n = 2; n <= kCumulantOrder; ++n) {
    if (n > 2) fact *= n - 2;
    const double k = kappa[n - 1];
    // sigma2: kappa_n x^{n-2} / (n-1)!; f: kappa_n x^n (2-n) / (2 n!);
    // f': kappa_n x^{n-1} (2-n) / (2 (n-1)!).
    v.sigma2_at_x += k * xn / (fact * (n - 1));
    v.f += k * xn * x * x * (2.0 - n) / (2.0 * fact * (n - 1) * n);
    v.df += k * xn * x * (2.0 - n) / (2.0 * fact * (n - 1));
    xn *= x;
  }
  return v;
}

TranscendentalValue direct(const BetaParams& params, double x, const SeriesConfig& cfg) {
  const double a = params.alpha();
  const double b = params.sum();
  const double mu = params.mean();
  const double log_f0 = log_kummer_1f1(KummerArgs(a, b, x), cfg);
  const double log_f1 = log_kummer_1f1(KummerArgs(a + 1.0, b + 1.0, x), cfg);
  const double log_f2 = log_kummer_1f1(KummerArgs(a + 2.0, b + 2.0, x), cfg);
  const double r1 = std::exp(log_f1 - log_f0);
  const double r2 = std::exp(log_f2 - log_f0);

  // K' = mu R and K'' = mu (a+1)/(b+1) F2/F - (mu R)^2 for the cumulant function K = ln F.
  const double dk = mu * r1;
  const double d2k = mu * (a + 1.0) / (b + 1.0) * r2 - dk * dk;

  TranscendentalValue v;
  v.f = log_f0 - 0.5 * mu * x * (1.0 + r1);
  v.sigma2_at_x = mu * (r1 - 1.0) / x;
  v.df = 0.5 * (dk - mu) - 0.5 * x * d2k;
  return v;
}

struct Bracket {
  double neg;  // f(neg) < 0, closer to zero
  double pos;  // f(pos) > 0, farther out
  unsigned evaluations;
};

Bracket find_bracket(const BetaParams& params, double sign, const SeriesConfig& cfg) {
  const double skew = std::abs(params.beta() - params.alpha()) / params.sum();
  const double start = sign * std::max(1.0, skew);
  // x0 shrinks with the skew for nearly symmetric pairs.
  const double floor = std::min(kBracketMin, 1e-2 * skew);
  unsigned evals = 1;
  const double f_start = transcendental_system(params, start, cfg).f;
  if (f_start == 0.0) return {start, start, evals};

  if (f_start < 0.0) {
    double inner = start;
    for (double x = 2.0 * start; std::abs(x) <= kBracketMax; x *= 2.0) {
      ++evals;
      if (transcendental_system(params, x, cfg).f > 0.0) return {inner, x, evals};
      inner = x;
    }
  } else {
    double outer = start;
    for (double x = 0.5 * start; std::abs(x) >= floor; x *= 0.5) {
      ++evals;
      if (transcendental_system(params, x, cfg).f < 0.0) return {x, outer, evals};
      outer = x;
    }
  }
  throw BracketFailure("no sign change of the stationarity equation for alpha=" +
                       std::to_string(params.alpha()) + " beta=" + std::to_string(params.beta()));
}

}  // namespace

std::string_view to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::Symmetric:
      return "symmetric";
    case Branch::Transcendental:
      return "transcendental";
    case Branch::BernoulliLimit:
      return "bernoulli_limit";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("solver tol must be positive");
  if (max_iter == 0) throw DomainError("solver max_iter must be positive");
  if (!(symmetric_tol >= 0.0)) throw DomainError("symmetric_tol must be non-negative");
  series.validate();
}

double variance(const BetaParams& params) noexcept {
  const double s = params.sum();
  return params.alpha() * params.beta() / (s * s * (s + 1.0));
}

double simple_upper_bound(const BetaParams& params) noexcept {
  return 1.0 / (4.0 * (params.sum() + 1.0));
}

double interpolated_sigma2(const BetaParams& params, double t) noexcept {
  return (1.0 - t) * simple_upper_bound(params) + t * variance(params);
}

double gaussian_log_gap(const BetaParams& params, double sigma2, double x,
                        const SeriesConfig& cfg) {
  if (std::abs(x) >= kSeriesBelow) {
    const double l1 = params.mean() * x + 0.5 * sigma2 * x * x;
    return l1 - log_kummer_1f1(KummerArgs(params.alpha(), params.sum(), x), cfg);
  }
  const auto kappa = beta_cumulants(params, kCumulantOrder);
  double gap = 0.5 * (sigma2 - kappa[1]) * x * x;
  double term = 0.5 * x * x;  // x^n / n!
  for (unsigned n = 3; n <= kCumulantOrder; ++n) {
    term *= x / n;
    gap -= kappa[n - 1] * term;
  }
  return gap;
}

TranscendentalValue transcendental_system(const BetaParams& params, double x,
                                          const SeriesConfig& cfg) {
  if (params.alpha() == params.beta()) {
    throw DomainError("stationarity equation is degenerate for alpha == beta");
  }
  if (!(x * (params.beta() - params.alpha()) > 0.0)) {
    throw DomainError("x must be non-zero with the sign of beta - alpha");
  }
  if (std::abs(x) < kSeriesBelow) return cumulant_expansion(params, x);
  return direct(params, x, cfg);
}

ProxyResult optimal_proxy_variance(const BetaParams& params, const SolverConfig& cfg) {
  cfg.validate();
  ProxyResult result;
  if (is_strictly_subgaussian(params, cfg.symmetric_tol)) {
    const double half_sum = 0.5 * params.sum();
    result.sigma2_opt = 1.0 / (4.0 * (2.0 * half_sum + 1.0));
    result.branch = Branch::Symmetric;
    return result;
  }

  const double sign = params.beta() > params.alpha() ? 1.0 : -1.0;
  Bracket br = find_bracket(params, sign, cfg.series);
  unsigned iterations = br.evaluations;

  auto update = [&br](double x, double fx) {
    if (fx < 0.0) {
      br.neg = x;
    } else {
      br.pos = x;
    }
  };

  while (std::abs(br.pos - br.neg) > kBisectWidth * std::max(1.0, std::abs(br.neg)) &&
         iterations < cfg.max_iter) {
    const double mid = 0.5 * (br.neg + br.pos);
    ++iterations;
    const double fm = transcendental_system(params, mid, cfg.series).f;
    if (fm == 0.0) {
      br.neg = br.pos = mid;
      break;
    }
    update(mid, fm);
  }

  double x = 0.5 * (br.neg + br.pos);
  TranscendentalValue v = transcendental_system(params, x, cfg.series);
  ++iterations;
  while (iterations < cfg.max_iter && v.f != 0.0) {
    update(x, v.f);
    const double lo = std::min(br.neg, br.pos);
    const double hi = std::max(br.neg, br.pos);
    if (hi - lo <= kStepRelTol * std::abs(x)) break;

    double next = v.df != 0.0 ? x - v.f / v.df : lo - 1.0;
    const bool newton = next > lo && next < hi;
    if (!newton) next = 0.5 * (lo + hi);
    const double step = next - x;
    x = next;
    v = transcendental_system(params, x, cfg.series);
    ++iterations;
    if (newton && std::abs(step) <= kStepRelTol * std::abs(x)) break;
  }

  // f is a difference of terms of size |x (mu + K') / 2|; measure it against them.
  const double scale =
      std::max(1.0, std::abs(0.5 * x * (2.0 * params.mean() + x * v.sigma2_at_x)));
  result.residual = std::abs(v.f) / scale;
  if (result.residual > cfg.tol) {
    throw NonConvergence("root refinement stalled at relative |f|=" + std::to_string(result.residual) +
                         " for alpha=" + std::to_string(params.alpha()) +
                         " beta=" + std::to_string(params.beta()));
  }
  result.x0 = x;
  result.sigma2_opt = v.sigma2_at_x;
  result.branch = Branch::Transcendental;
  result.iterations = iterations;
  const double upper = simple_upper_bound(params);
  result.t_opt = (upper - result.sigma2_opt) / (upper - variance(params));
  return result;
}

bool is_strictly_subgaussian(const BetaParams& params, double symmetric_tol) noexcept {
  return std::abs(params.alpha() - params.beta()) <= symmetric_tol * params.sum();
}

}  // namespace subgauss
