#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "subgauss/beta.hpp"
#include "subgauss/params.hpp"
#include "subgauss/report.hpp"

namespace subgauss {

/// Candidate proxy variance sigma2_t = (1-t)/(4(1+alpha+beta)) + t Var[X]
/// and the difference functions built from it.
struct DifferenceFunctionSpec {
  BetaParams params;
  double t = 0.0;

  double sigma2_t() const noexcept { return interpolated_sigma2(params, t); }
};

/// u_t(x) = exp(mu x + sigma2_t x^2 / 2) - 1F1(alpha; alpha+beta; x), formed as
/// exp(L1) * (-expm1(L2 - L1)) so the difference keeps its relative accuracy.
double u_t(const DifferenceFunctionSpec& spec, double x, const SeriesConfig& cfg = {});

/// u_t scaled by 16 (alpha+beta)^4 (1+alpha+beta)^2 exp(-mu x - sigma2_t x^2 / 2); same sign as u_t.
double v_t(const DifferenceFunctionSpec& spec, double x, const SeriesConfig& cfg = {});

/// Coefficients {c0, c1, c2} of the forcing polynomial P2(x; t) = c0 + c1 x + c2 x^2.
struct Quadratic {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double x) const noexcept { return c0 + x * (c1 + x * c2); }
  double discriminant() const noexcept { return c1 * c1 - 4.0 * c0 * c2; }
};

Quadratic p2_coefficients(const BetaParams& params, double t) noexcept;
double p2_polynomial(const BetaParams& params, double t, double x) noexcept;

/// Closed form 16 t (1+a+b)^2 (b^2-a^2)^2 ((a+b)^2 - t (b-a)^2)^2 of the P2 discriminant.
double p2_discriminant_formula(const BetaParams& params, double t) noexcept;

/// Coefficient of v_t' in the normalised equation.
double q1_polynomial(const BetaParams& params, double t, double x) noexcept;
/// Coefficient of v_t in the normalised equation, x P2(x; t) / (16 (a+b)^4 (1+a+b)^2).
double q0_polynomial(const BetaParams& params, double t, double x) noexcept;

struct OdeResidual {
  /// max relative residual of x u'' + (a+b-x) u' - a u = x E(x) P2(x) / C
  double u_form = 0.0;
  /// max relative residual of x v'' + Q1 v' + Q0 v = x P2
  double v_form = 0.0;
};

/// Residuals of both second-order equations on a grid, derivatives from
/// five-point central differences of step h. Grid points closer than 2h to
/// the singular point x = 0 are skipped.
OdeResidual ode_residual(const DifferenceFunctionSpec& spec, std::span<const double> x_grid,
                         double h = 1e-3, const SeriesConfig& cfg = {});

/// 4 (beta^2 - alpha^2)^2 (1+alpha+beta) (1-t).
double v_second_derivative_formula(const DifferenceFunctionSpec& spec) noexcept;
/// (v(h) - 2 v(0) + v(-h)) / h^2.
double v_second_derivative_fd(const DifferenceFunctionSpec& spec, double h = 1e-3,
                              const SeriesConfig& cfg = {});
/// Step for v_second_derivative_fd: 1e-3, shrunk when the O(h^2) truncation
/// (driven by kappa_4) would exceed 1e-6 of v''(0), as for nearly symmetric pairs.
double v_second_derivative_step(const DifferenceFunctionSpec& spec);

/// Explicit alpha + beta -> 0 limit of u_t at fixed mean mu:
/// exp(mu x + x^2/8 - x^2 (2 mu - 1)^2 t / 8) - mu e^x + mu - 1.
double bernoulli_u(double mu, double t, double x) noexcept;

/// Max relative residual of u'' - u' = E(x) (c0 + c1 x + c2 x^2) for bernoulli_u.
double bernoulli_ode_residual(double mu, double t, std::span<const double> x_grid,
                              double h = 1e-3);

struct SupRatio {
  double sigma2 = 0.0;
  double argmax = 0.0;
  /// Maximiser within 1% of +-lambda_max; retry with a wider range.
  bool boundary_hit = false;
  double lambda_max = 0.0;
};

/// sup over 0 < |lambda| <= lambda_max of 2 (ln 1F1(alpha; alpha+beta; lambda) - mu lambda) / lambda^2
/// by a 2001-point scan refined with golden-section search to width 1e-9.
/// The ratio tends to Var[X] at lambda = 0 and is evaluated there by its cumulant expansion.
SupRatio sup_ratio_oracle(const BetaParams& params, double lambda_max = 50.0,
                          const SeriesConfig& cfg = {});

/// sup_ratio_oracle, doubling lambda_max from 50 while the maximiser hits the boundary (up to 200).
SupRatio sup_ratio_oracle_auto(const BetaParams& params, const SeriesConfig& cfg = {});

/// Minimum over an evenly spaced grid on [-lambda_max, lambda_max] of
/// exp(mu lambda + sigma2 lambda^2 / 2) / 1F1(alpha; alpha+beta; lambda) - 1.
/// Negative values mean the Gaussian bound fails somewhere on the grid.
double mgf_domination_margin(const BetaParams& params, double sigma2, double lambda_max = 50.0,
                             std::size_t points = 2001, const SeriesConfig& cfg = {});

/// exp(mu l + sigma2 l^2 / 2) / ((1-mu) + mu e^l) - 1 at a single point.
double bernoulli_relative_gap(double mu, double sigma2, double lambda);

/// Minimum of bernoulli_relative_gap over an evenly spaced grid on [-lambda_max, lambda_max].
double bernoulli_domination_margin(double mu, double sigma2, double lambda_max = 50.0,
                                   std::size_t points = 2001);

/// Checks the shape of u_t for t in {0, t_opt, (t_opt + 1)/2, 1} on the half-line of
/// sign(beta - alpha). Symmetric pairs yield a single skipped entry.
VerifyReport sign_structure_check(const BetaParams& params, const SolverConfig& cfg = {});

struct DirectionalDirichlet {
  DirichletParams params;
  std::vector<double> direction;
};

using TailTarget = std::variant<BetaParams, BernoulliParams, DirectionalDirichlet>;

/// Monte Carlo estimate of P(Y - E[Y] > eps) and P(E[Y] - Y > eps) for
/// eps in {0.1, 0.2, 0.3}, each compared with exp(-eps^2 / (2 sigma2)) + 3 SE.
/// Requires n_samples >= 1e5.
VerifyReport chernoff_tail_check(const TailTarget& target, double sigma2, std::size_t n_samples,
                                 std::uint64_t seed);

/// Monte Carlo check that E[exp(lambda (u^T X - u^T mu))] <= exp(lambda^2 sigma2 / 2)
/// within three standard errors, for each lambda.
VerifyReport directional_mgf_check(const DirichletParams& params, std::span<const double> u,
                                   double sigma2, std::span<const double> lambdas,
                                   std::size_t n_samples, std::uint64_t seed);

}  // namespace subgauss
