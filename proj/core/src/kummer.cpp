#include "subgauss/kummer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "subgauss/errors.hpp"

namespace subgauss {
namespace {

constexpr double kRescaleAbove = 1e300;
// e^600 keeps rescaled partial sums comfortably inside double range.
constexpr double kRescaleLog = 600.0;
constexpr unsigned kExactPochhammerMax = 20;
constexpr double kAsymptoticAbove = 4000.0;
constexpr unsigned kAsymptoticTerms = 200;

// Value of a 1F1 series held as (1 + tail) * exp(log_scale). The j = 0 term is
// kept apart from the tail so that ln(1 + tail) can use log1p for small x.
struct ScaledSeries {
  double head = 1.0;
  double tail = 0.0;
  double log_scale = 0.0;

  double value() const { return (head + tail) * std::exp(log_scale); }

  double log_value() const {
    if (log_scale == 0.0 && head == 1.0) return std::log1p(tail);
    return log_scale + std::log(head + tail);
  }

  bool positive() const { return head + tail > 0.0; }
};

ScaledSeries sum_series(double a, double b, double x, const SeriesConfig& cfg) {
  ScaledSeries s;
  double term = 1.0;
  unsigned small_run = 0;
  for (unsigned j = 0; j < cfg.max_terms; ++j) {
    term *= (a + j) / (b + j) * x / (j + 1.0);
    s.tail += term;
    if (std::abs(term) > kRescaleAbove || std::abs(s.tail) > kRescaleAbove) {
      const double shrink = std::exp(-kRescaleLog);
      term *= shrink;
      s.tail *= shrink;
      s.head *= shrink;
      s.log_scale += kRescaleLog;
    }
    if (std::abs(term) < cfg.rel_tol * std::abs(s.head + s.tail)) {
      if (++small_run == 3) return s;
    } else {
      small_run = 0;
    }
  }
  throw NonConvergence("1F1(" + std::to_string(a) + "; " + std::to_string(b) + "; " +
                       std::to_string(x) + ") series did not converge within " +
                       std::to_string(cfg.max_terms) + " terms");
}

// ln Gamma(b) - ln Gamma(c) without the cancellation of two large lgamma values.
double log_gamma_ratio(double b, double c) {
  if (b < 10.0 || c < 10.0) return std::lgamma(b) - std::lgamma(c);
  const double d = b - c;
  // Stirling: (b - 1/2) ln b - b - [(c - 1/2) ln c - c] + 1/(12 b) - 1/(12 c) - ...
  const double main = -(b - 0.5) * std::log1p(-d / b) + d * std::log(c) - d;
  const double corr = (1.0 / b - 1.0 / c) / 12.0 - (1.0 / (b * b * b) - 1.0 / (c * c * c)) / 360.0 +
                      (1.0 / std::pow(b, 5) - 1.0 / std::pow(c, 5)) / 1260.0;
  return main + corr;
}

// ln (1F1(a; b; x) e^-x) for large positive x from
// 1F1 ~ Gamma(b)/Gamma(a) e^x x^(a-b) sum_k (b-a)_k (1-a)_k / (k! x^k).
// Leaving out e^x lets the Kummer-transformed branch cancel it exactly.
// Empty unless x is well past b and the expansion settles before it diverges.
std::optional<double> log_asymptotic_scaled(double a, double b, double x, double rel_tol) {
  if (!(x > kAsymptoticAbove && a > 0.0 && b > a && x > 8.0 * std::max(b, std::abs((b - a) * (1.0 - a))))) {
    return std::nullopt;
  }
  double sum = 1.0;
  double term = 1.0;
  for (unsigned k = 0; k < kAsymptoticTerms; ++k) {
    const double next = term * (b - a + k) * (1.0 - a + k) / ((k + 1.0) * x);
    if (k > 0 && std::abs(next) >= std::abs(term)) return std::nullopt;
    term = next;
    sum += term;
    if (std::abs(term) < rel_tol * std::abs(sum)) {
      if (!(sum > 0.0)) return std::nullopt;
      return log_gamma_ratio(b, a) + (a - b) * std::log(x) + std::log(sum);
    }
  }
  return std::nullopt;
}

}  // namespace

KummerArgs::KummerArgs(double a, double b, double x) : a_(a), b_(b), x_(x) {
  if (!(std::isfinite(a) && a > 0.0) || !(std::isfinite(b) && b > 0.0)) {
    throw DomainError("1F1 parameters must be positive, got a=" + std::to_string(a) +
                      " b=" + std::to_string(b));
  }
  if (!std::isfinite(x)) throw DomainError("1F1 argument must be finite");
}

void SeriesConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");
  if (max_terms < 10) throw DomainError("max_terms must be at least 10");
}

double pochhammer(double x, unsigned j) {
  if (j > kExactPochhammerMax) return std::exp(log_pochhammer(x, j));
  double p = 1.0;
  for (unsigned k = 0; k < j; ++k) p *= x + k;
  return p;
}

double log_pochhammer(double x, unsigned j) {
  if (j <= kExactPochhammerMax) {
    double s = 0.0;
    for (unsigned k = 0; k < j; ++k) s += std::log(x + k);
    return s;
  }
  return std::lgamma(x + j) - std::lgamma(x);
}

double kummer_1f1(const KummerArgs& args, const SeriesConfig& cfg) {
  cfg.validate();
  if (args.x() == 0.0) return 1.0;
  if (std::abs(args.x()) > kAsymptoticAbove) return std::exp(log_kummer_1f1(args, cfg));
  if (args.x() > 0.0) return sum_series(args.a(), args.b(), args.x(), cfg).value();
  const ScaledSeries s = sum_series(args.b() - args.a(), args.b(), -args.x(), cfg);
  return (s.head + s.tail) * std::exp(s.log_scale + args.x());
}

double log_kummer_1f1(const KummerArgs& args, const SeriesConfig& cfg) {
  cfg.validate();
  if (args.x() == 0.0) return 0.0;
  if (args.x() > 0.0) {
    if (auto v = log_asymptotic_scaled(args.a(), args.b(), args.x(), cfg.rel_tol)) {
      return args.x() + *v;
    }
  } else if (auto v = log_asymptotic_scaled(args.b() - args.a(), args.b(), -args.x(), cfg.rel_tol)) {
    return *v;
  }
  const bool direct = args.x() > 0.0;
  const ScaledSeries s = direct ? sum_series(args.a(), args.b(), args.x(), cfg)
                                : sum_series(args.b() - args.a(), args.b(), -args.x(), cfg);
  if (!s.positive()) throw DomainError("1F1 is not positive here; logarithm undefined");
  return direct ? s.log_value() : args.x() + s.log_value();
}

double beta_raw_moment(const BetaParams& params, unsigned j) {
  if (j <= kExactPochhammerMax) {
    double m = 1.0;
    for (unsigned k = 0; k < j; ++k) m *= (params.alpha() + k) / (params.sum() + k);
    return m;
  }
  return std::exp(log_pochhammer(params.alpha(), j) - log_pochhammer(params.sum(), j));
}

double beta_central_even_moment(double alpha, unsigned j) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  // (2j)!/(4^j j!) * (alpha)_j/(2 alpha)_{2j} telescopes to prod (2l-1)/(4(2 alpha + 2l - 1)).
  double m = 1.0;
  for (unsigned l = 1; l <= j; ++l) m *= (2.0 * l - 1.0) / (4.0 * (2.0 * alpha + 2.0 * l - 1.0));
  return m;
}

std::vector<double> beta_cumulants(const BetaParams& params, unsigned order) {
  if (order == 0) return {};
  const double b = params.sum();
  const double mu = params.mean();
  const double skew = (params.beta() - params.alpha()) / b;  // 1 - 2 mu
  // c[k] = kappa_{k+1} / k!
  std::vector<double> c(order);
  c[0] = mu;
  if (order > 1) c[1] = mu * (params.beta() / b) / (1.0 + b);
  for (unsigned k = 2; k < order; ++k) {
    double conv = 0.0;
    for (unsigned i = 1; i + 1 < k; ++i) conv += c[i] * c[k - 1 - i];
    c[k] = (skew * c[k - 1] - conv) / (k + b);
  }
  double fact = 1.0;
  for (unsigned k = 1; k < order; ++k) {
    fact *= k;
    c[k] *= fact;
  }
  return c;
}

}  // namespace subgauss
