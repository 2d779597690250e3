#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "subgauss/beta.hpp"
#include "subgauss/params.hpp"

namespace subgauss {

/// E[prod X_i^{n_i}] = prod (alpha_i)_{n_i} / (alpha_bar)_{n_bar}, evaluated in log space.
double dirichlet_moment(const DirichletParams& params, const MultiIndex& n);

/// Cov[X_i, X_j] (zero-based indices); the diagonal gives Var[X_i].
double dirichlet_covariance(const DirichletParams& params, std::size_t i, std::size_t j);

/// Law of sum_{i in subset} X_i. The subset must be non-empty and strict.
BetaParams marginal_beta(const DirichletParams& params, std::span<const std::size_t> subset);

/// Optimal proxy variance of Dir(alpha): the Beta optimum of (alpha_max, alpha_bar - alpha_max).
ProxyResult dirichlet_optimal_proxy(const DirichletParams& params, const SolverConfig& cfg = {});

/// Certified (not necessarily optimal) proxy variance of u^T X for u on the
/// probability simplex: sum_i u_i^2 sigma_opt^2(alpha_i, alpha_bar - alpha_i).
/// Throws NotOnSimplex for negative entries or entries not summing to one.
double directional_proxy(const DirichletParams& params, std::span<const double> u,
                         const SolverConfig& cfg = {});

bool is_strictly_subgaussian_dirichlet(const DirichletParams& params,
                                       double symmetric_tol = 1e-10) noexcept;

/// prod_i (alpha_bar)_{n_i} <= (alpha_bar)_{n_bar}, compared in log space.
bool pochhammer_product_inequality(double alpha_bar, const MultiIndex& n);

/// Truncated moment series of E[exp(lambda^T X)] over all multi-indices with n_bar <= max_order.
double dirichlet_mgf_series(const DirichletParams& params, std::span<const double> lambda,
                            unsigned max_order);

}  // namespace subgauss
