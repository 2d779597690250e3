#include "subgauss/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "subgauss/errors.hpp"
#include "subgauss/kummer.hpp"

namespace subgauss {
namespace {

constexpr double kSimplexTol = 1e-12;

void check_index(const DirichletParams& params, std::size_t i) {
  if (i >= params.dim()) {
    throw DomainError("component index " + std::to_string(i) + " out of range for dimension " +
                      std::to_string(params.dim()));
  }
}

}  // namespace

double dirichlet_moment(const DirichletParams& params, const MultiIndex& n) {
  if (n.dim() != params.dim()) throw DomainError("multi-index dimension mismatch");
  double log_m = -log_pochhammer(params.alpha_bar(), n.total());
  for (std::size_t i = 0; i < n.dim(); ++i) log_m += log_pochhammer(params[i], n[i]);
  return std::exp(log_m);
}

double dirichlet_covariance(const DirichletParams& params, std::size_t i, std::size_t j) {
  check_index(params, i);
  check_index(params, j);
  const double ab = params.alpha_bar();
  const double denom = ab * ab * (1.0 + ab);
  if (i == j) return params[i] * (ab - params[i]) / denom;
  return -params[i] * params[j] / denom;
}

BetaParams marginal_beta(const DirichletParams& params, std::span<const std::size_t> subset) {
  std::vector<bool> in(params.dim(), false);
  for (std::size_t i : subset) {
    check_index(params, i);
    in[i] = true;
  }
  double inside = 0.0;
  double outside = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < params.dim(); ++i) {
    if (in[i]) {
      inside += params[i];
      ++count;
    } else {
      outside += params[i];
    }
  }
  if (count == 0 || count == params.dim()) {
    throw EmptyOrFullSubset("marginal subset must be non-empty and strict");
  }
  return BetaParams(inside, outside);
}

ProxyResult dirichlet_optimal_proxy(const DirichletParams& params, const SolverConfig& cfg) {
  // Every maximal component induces the same reduced pair, so ties need no rule.
  return optimal_proxy_variance(
      BetaParams(params.alpha_max(), params.alpha_bar() - params.alpha_max()), cfg);
}

double directional_proxy(const DirichletParams& params, std::span<const double> u,
                         const SolverConfig& cfg) {
  if (u.size() != params.dim()) throw NotOnSimplex("direction dimension mismatch");
  double total = 0.0;
  for (double ui : u) {
    if (!(ui >= 0.0)) throw NotOnSimplex("direction has a negative entry");
    total += ui;
  }
  if (std::abs(total - 1.0) > kSimplexTol * static_cast<double>(u.size())) {
    throw NotOnSimplex("direction entries must sum to one");
  }
  double proxy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) continue;
    const double s2 =
        optimal_proxy_variance(BetaParams(params[i], params.alpha_bar() - params[i]), cfg)
            .sigma2_opt;
    proxy += u[i] * u[i] * s2;
  }
  return proxy;
}

bool is_strictly_subgaussian_dirichlet(const DirichletParams& params,
                                       double symmetric_tol) noexcept {
  return params.dim() == 2 &&
         std::abs(params[0] - params[1]) <= symmetric_tol * (params[0] + params[1]);
}

bool pochhammer_product_inequality(double alpha_bar, const MultiIndex& n) {
  if (!(alpha_bar > 0.0)) throw DomainError("alpha_bar must be positive");
  double lhs = 0.0;
  for (unsigned ni : n.values()) lhs += log_pochhammer(alpha_bar, ni);
  const double rhs = log_pochhammer(alpha_bar, n.total());
  // Equal products (one non-zero block) may differ by rounding in the log sums.
  return lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs));
}

double dirichlet_mgf_series(const DirichletParams& params, std::span<const double> lambda,
                            unsigned max_order) {
  const std::size_t d = params.dim();
  if (lambda.size() != d) throw DomainError("lambda dimension mismatch");

  // factor[i][k] = lambda_i^k (alpha_i)_k / k!
  std::vector<std::vector<double>> factor(d, std::vector<double>(max_order + 1, 1.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (unsigned k = 1; k <= max_order; ++k) {
      factor[i][k] = factor[i][k - 1] * lambda[i] * (params[i] + k - 1) / k;
    }
  }

  double total = 0.0;
  double inv_poch = 1.0;  // 1 / (alpha_bar)_m
  for (unsigned m = 0; m <= max_order; ++m) {
    if (m > 0) inv_poch /= params.alpha_bar() + m - 1;
    double level = 0.0;
    std::function<void(std::size_t, unsigned, double)> walk = [&](std::size_t i, unsigned left,
                                                                  double prod) {
      if (i + 1 == d) {
        level += prod * factor[i][left];
        return;
      }
      for (unsigned k = 0; k <= left; ++k) walk(i + 1, left - k, prod * factor[i][k]);
    };
    walk(0, m, 1.0);
    total += level * inv_poch;
  }
  return total;
}

}  // namespace subgauss
