#pragma once

#include "subgauss/beta.hpp"
#include "subgauss/params.hpp"

namespace subgauss {

/// g(mu) = ln((1-mu)/mu) / (1 - 2 mu), with the removable singularity at 1/2
/// replaced by its Taylor expansion when |mu - 1/2| < 1e-6.
double g_function(double mu);

/// 1 / (2 g(mu)): a proxy variance valid for every [0,1]-supported variable with mean mu.
double kearns_saul_proxy(double mu);

/// Optimal proxy variance of Bernoulli(mu), (1 - 2 mu) / (2 ln((1-mu)/mu)).
double bernoulli_optimal_proxy(const BernoulliParams& params);

/// Same value packaged with the touching point x0 = 2 ln((1-mu)/mu) and t_opt.
ProxyResult bernoulli_proxy_result(const BernoulliParams& params);

struct LimitComparison {
  double beta_value = 0.0;
  double bernoulli_value = 0.0;
  double gap = 0.0;
};

/// Compares Beta(epsilon mu, epsilon (1-mu)) with Bernoulli(mu).
LimitComparison beta_to_bernoulli_limit(double mu, double epsilon, const SolverConfig& cfg = {});

}  // namespace subgauss
