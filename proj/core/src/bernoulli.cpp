#include "subgauss/bernoulli.hpp"

#include <cmath>

#include "subgauss/errors.hpp"

namespace subgauss {
namespace {

constexpr double kTaylorBelow = 1e-6;

void check_mean(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mean must lie in (0, 1)");
}

}  // namespace

double g_function(double mu) {
  check_mean(mu);
  const double d = 2.0 * mu - 1.0;
  if (std::abs(mu - 0.5) < kTaylorBelow) return 2.0 + (2.0 / 3.0) * d * d;
  return std::log((1.0 - mu) / mu) / (1.0 - 2.0 * mu);
}

double kearns_saul_proxy(double mu) { return 1.0 / (2.0 * g_function(mu)); }

double bernoulli_optimal_proxy(const BernoulliParams& params) {
  const double mu = params.mu();
  const double d = 2.0 * mu - 1.0;
  if (std::abs(mu - 0.5) < kTaylorBelow) return 0.25 - d * d / 12.0;
  return (1.0 - 2.0 * mu) / (2.0 * std::log((1.0 - mu) / mu));
}

ProxyResult bernoulli_proxy_result(const BernoulliParams& params) {
  const double mu = params.mu();
  ProxyResult r;
  r.branch = Branch::BernoulliLimit;
  r.sigma2_opt = bernoulli_optimal_proxy(params);
  if (std::abs(mu - 0.5) < kTaylorBelow) {
    r.x0 = 0.0;
    r.t_opt = 1.0;
    return r;
  }
  r.x0 = 2.0 * std::log((1.0 - mu) / mu);
  // Simple bound 1/4 at t = 0, variance mu (1 - mu) at t = 1.
  const double d = 2.0 * mu - 1.0;
  r.t_opt = (0.25 - r.sigma2_opt) / (0.25 * d * d);
  return r;
}

LimitComparison beta_to_bernoulli_limit(double mu, double epsilon, const SolverConfig& cfg) {
  const BernoulliParams bern(mu);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  LimitComparison c;
  c.beta_value = optimal_proxy_variance(BetaParams(epsilon * mu, epsilon * (1.0 - mu)), cfg).sigma2_opt;
  c.bernoulli_value = bernoulli_optimal_proxy(bern);
  c.gap = c.beta_value - c.bernoulli_value;
  return c;
}

}  // namespace subgauss
