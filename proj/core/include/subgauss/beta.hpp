#pragma once

#include <string_view>

#include "subgauss/kummer.hpp"
#include "subgauss/params.hpp"

namespace subgauss {

enum class Branch { Symmetric, Transcendental, BernoulliLimit };

std::string_view to_string(Branch branch) noexcept;

/// Optimal proxy variance together with the solver's diagnostics.
struct ProxyResult {
  double sigma2_opt = 0.0;
  /// Touching point of the Gaussian bound and the MGF; 0 on the symmetric branch.
  double x0 = 0.0;
  /// Position of sigma2_opt on the segment from the simple bound (t = 0) to the variance (t = 1).
  double t_opt = 1.0;
  Branch branch = Branch::Symmetric;
  /// |f(x0)| of the stationarity equation over the size of its terms (floored at 1).
  double residual = 0.0;
  unsigned iterations = 0;
};

struct SolverConfig {
  /// Acceptance threshold on the relative residual.
  double tol = 1e-12;
  unsigned max_iter = 200;
  /// Pairs with |alpha - beta| <= symmetric_tol * (alpha + beta) take the closed form.
  double symmetric_tol = 1e-10;
  SeriesConfig series{};

  void validate() const;
};

/// alpha beta / ((alpha+beta)^2 (alpha+beta+1)).
double variance(const BetaParams& params) noexcept;

/// 1 / (4 (alpha+beta+1)); never below the optimal proxy variance.
double simple_upper_bound(const BetaParams& params) noexcept;

/// Proxy variance on the segment between the simple bound (t = 0) and the variance (t = 1).
double interpolated_sigma2(const BetaParams& params, double t) noexcept;

/// mu x + sigma2 x^2 / 2 - ln 1F1(alpha; alpha+beta; x). For |x| < 1e-2 it is
/// summed from the cumulants, so it keeps relative accuracy as x -> 0.
double gaussian_log_gap(const BetaParams& params, double sigma2, double x,
                        const SeriesConfig& cfg = {});

struct TranscendentalValue {
  /// ln F(x) - mu x (1 + R(x)) / 2, with F = 1F1(a; a+b; x) and R = 1F1(a+1; a+b+1; x) / F.
  double f = 0.0;
  /// mu (R(x) - 1) / x, which equals the optimal proxy variance where f vanishes.
  double sigma2_at_x = 0.0;
  /// df/dx, used by the Newton stage of the solver.
  double df = 0.0;
};

/// Evaluates the stationarity equation whose unique root on the half-line of
/// sign(beta - alpha) is x0. Requires alpha != beta and x of the sign of beta - alpha.
/// Near x = 0 both outputs come from a cumulant expansion to avoid cancellation.
TranscendentalValue transcendental_system(const BetaParams& params, double x,
                                          const SeriesConfig& cfg = {});

/// Optimal sub-Gaussian proxy variance of Beta(alpha, beta).
///
/// Symmetric pairs return 1/(4(2 alpha + 1)) directly. Otherwise the root x0 is
/// bracketed by geometric expansion from sign(beta - alpha), narrowed by
/// bisection and polished by safeguarded Newton.
///
/// Throws BracketFailure if no sign change exists for |x| between min(1e-8, skew / 100) and 1e6,
/// skew = |beta - alpha| / (alpha + beta), and
/// NonConvergence if the iteration cap is hit with |f| above tol.
ProxyResult optimal_proxy_variance(const BetaParams& params, const SolverConfig& cfg = {});

/// True exactly for symmetric pairs (the variance is then already optimal).
bool is_strictly_subgaussian(const BetaParams& params, double symmetric_tol = 1e-10) noexcept;

}  // namespace subgauss
