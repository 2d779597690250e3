#pragma once

#include <vector>

#include "subgauss/params.hpp"

namespace subgauss {

/// Arguments of Kummer's function 1F1(a; b; x) restricted to a, b > 0.
/// For a Beta(alpha, beta) moment generating function a = alpha, b = alpha + beta.
class KummerArgs {
 public:
  KummerArgs(double a, double b, double x);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double x() const noexcept { return x_; }

 private:
  double a_;
  double b_;
  double x_;
};

/// Truncation rule for the hypergeometric series: stop once three consecutive
/// terms are each below rel_tol times the partial sum.
struct SeriesConfig {
  double rel_tol = 1e-14;
  unsigned max_terms = 10000;

  /// Throws DomainError unless rel_tol is in (0, 1) and max_terms >= 10.
  void validate() const;
};

/// Rising factorial (x)_j = x (x+1) ... (x+j-1); exact product for j <= 20,
/// log-gamma route above that.
double pochhammer(double x, unsigned j);

/// ln (x)_j, overflow-free for any j.
double log_pochhammer(double x, unsigned j);

/// Kummer's function 1F1(a; b; x).
///
/// Non-negative arguments are summed directly (all terms positive). Negative
/// arguments go through the Kummer transformation e^x 1F1(b-a; b; -x) so the
/// summed series has no alternating cancellation. Partial sums are rescaled
/// when they pass 1e300; the result only overflows when the true value does.
///
/// Throws NonConvergence when cfg.max_terms is exhausted.
double kummer_1f1(const KummerArgs& args, const SeriesConfig& cfg = {});

/// ln 1F1(a; b; x), usable far past the range where 1F1 itself overflows.
/// For |x| above 4000 and well past b the large-argument asymptotic expansion
/// takes over, so the cost stops growing with |x|.
/// Throws DomainError if the function value is not positive (only possible
/// for b < a, which never arises for Beta laws).
double log_kummer_1f1(const KummerArgs& args, const SeriesConfig& cfg = {});

/// E[X^j] = (alpha)_j / (alpha+beta)_j for X ~ Beta(alpha, beta).
double beta_raw_moment(const BetaParams& params, unsigned j);

/// E[(X - 1/2)^{2j}] for X ~ Beta(alpha, alpha).
double beta_central_even_moment(double alpha, unsigned j);

/// Cumulants kappa_1 .. kappa_order of Beta(alpha, beta); element i holds
/// kappa_{i+1}. y = K' satisfies x y' = a - (b - x) y - x y^2, which gives a
/// recursion for its Taylor coefficients free of the cancellation that the
/// raw-moment route suffers when the variance is small.
std::vector<double> beta_cumulants(const BetaParams& params, unsigned order);

}  // namespace subgauss
