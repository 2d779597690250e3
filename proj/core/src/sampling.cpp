#include "subgauss/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace subgauss {
namespace {

// ln G for G ~ Gamma(shape, 1). Shapes below one use G = G' U^{1/shape} with
// G' ~ Gamma(shape + 1, 1), kept in log form so tiny shapes do not underflow.
double log_gamma_variate(double shape, Engine& rng) {
  if (shape >= 1.0) {
    std::gamma_distribution<double> g(shape, 1.0);
    return std::log(g(rng));
  }
  std::gamma_distribution<double> g(shape + 1.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double v = u(rng);
  while (v == 0.0) v = u(rng);
  return std::log(g(rng)) + std::log(v) / shape;
}

}  // namespace

double sample_beta(const BetaParams& params, Engine& rng) {
  const double la = log_gamma_variate(params.alpha(), rng);
  const double lb = log_gamma_variate(params.beta(), rng);
  return 1.0 / (1.0 + std::exp(lb - la));
}

std::vector<double> sample_dirichlet(const DirichletParams& params, Engine& rng) {
  std::vector<double> x(params.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = log_gamma_variate(params[i], rng);
  const double top = *std::max_element(x.begin(), x.end());
  double s = 0.0;
  for (double& xi : x) {
    xi = std::exp(xi - top);
    s += xi;
  }
  for (double& xi : x) xi /= s;
  return x;
}

}  // namespace subgauss
