// Difference functions u_t, v_t and the second-order equations they satisfy.

#include <algorithm>
#include <cmath>

#include "subgauss/errors.hpp"
#include "subgauss/kummer.hpp"
#include "subgauss/verify.hpp"

namespace subgauss {
namespace {

// Normalising constant 16 (a+b)^4 (1+a+b)^2.
double norm_constant(const BetaParams& p) {
  const double b = p.sum();
  return 16.0 * b * b * b * b * (1.0 + b) * (1.0 + b);
}

double gaussian_exponent(const DifferenceFunctionSpec& spec, double x) {
  return spec.params.mean() * x + 0.5 * spec.sigma2_t() * x * x;
}

// K = ln F and its first two derivatives, F = 1F1(a; a+b; x).
struct CumulantFunction {
  double k = 0.0;
  double dk = 0.0;
  double d2k = 0.0;
};

CumulantFunction cumulant_function(const BetaParams& p, double x, const SeriesConfig& cfg) {
  const double a = p.alpha();
  const double b = p.sum();
  const double mu = p.mean();
  const double l0 = log_kummer_1f1(KummerArgs(a, b, x), cfg);
  const double r1 = std::exp(log_kummer_1f1(KummerArgs(a + 1.0, b + 1.0, x), cfg) - l0);
  const double r2 = std::exp(log_kummer_1f1(KummerArgs(a + 2.0, b + 2.0, x), cfg) - l0);
  CumulantFunction c;
  c.k = l0;
  c.dk = mu * r1;
  c.d2k = mu * (a + 1.0) / (b + 1.0) * r2 - c.dk * c.dk;
  return c;
}

struct Derivatives {
  double d1;
  double d2;
};

template <class F>
Derivatives five_point(F&& f, double x, double h) {
  const double fm2 = f(x - 2.0 * h);
  const double fm1 = f(x - h);
  const double f0 = f(x);
  const double fp1 = f(x + h);
  const double fp2 = f(x + 2.0 * h);
  return {(fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h),
          (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)};
}

}  // namespace

double u_t(const DifferenceFunctionSpec& spec, double x, const SeriesConfig& cfg) {
  if (x == 0.0) return 0.0;
  const double gap = gaussian_log_gap(spec.params, spec.sigma2_t(), x, cfg);
  return -std::exp(gaussian_exponent(spec, x)) * std::expm1(-gap);
}

double v_t(const DifferenceFunctionSpec& spec, double x, const SeriesConfig& cfg) {
  if (x == 0.0) return 0.0;
  return -norm_constant(spec.params) * std::expm1(-gaussian_log_gap(spec.params, spec.sigma2_t(), x, cfg));
}

Quadratic p2_coefficients(const BetaParams& params, double t) noexcept {
  const double a = params.alpha();
  const double b = params.beta();
  const double s = a + b;
  const double diff2 = a * a - b * b;
  const double d = s * s - t * (b - a) * (b - a);
  Quadratic q;
  q.c0 = 4.0 * (1.0 - t) * diff2 * diff2 * (1.0 + s) * (1.0 + s);
  q.c1 = -4.0 * (b * b - a * a) * (1.0 + s) * d;
  q.c2 = d * d;
  return q;
}

double p2_polynomial(const BetaParams& params, double t, double x) noexcept {
  return p2_coefficients(params, t)(x);
}

double p2_discriminant_formula(const BetaParams& params, double t) noexcept {
  const double a = params.alpha();
  const double b = params.beta();
  const double s = a + b;
  const double diff2 = b * b - a * a;
  const double d = s * s - t * (b - a) * (b - a);
  return 16.0 * t * (1.0 + s) * (1.0 + s) * diff2 * diff2 * d * d;
}

double q1_polynomial(const BetaParams& params, double t, double x) noexcept {
  const double a = params.alpha();
  const double b = params.beta();
  const double s = a + b;
  const double d = s * s - t * (b - a) * (b - a);
  return s - (b - a) / s * x + d / (2.0 * s * s * (1.0 + s)) * x * x;
}

double q0_polynomial(const BetaParams& params, double t, double x) noexcept {
  return x * p2_polynomial(params, t, x) / norm_constant(params);
}

OdeResidual ode_residual(const DifferenceFunctionSpec& spec, std::span<const double> x_grid,
                         double h, const SeriesConfig& cfg) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const BetaParams& p = spec.params;
  const double a = p.alpha();
  const double b = p.sum();
  const double mu = p.mean();
  const double s2 = spec.sigma2_t();
  const double c = norm_constant(p);

  OdeResidual worst;
  for (double x : x_grid) {
    if (std::abs(x) < 2.0 * h) continue;

    const auto u = [&](double y) { return u_t(spec, y, cfg); };
    const auto v = [&](double y) { return v_t(spec, y, cfg); };
    const Derivatives du = five_point(u, x, h);
    const Derivatives dv = five_point(v, x, h);
    const double u0 = u(x);
    const double v0 = v(x);

    const double e = std::exp(gaussian_exponent(spec, x));
    const double slope = mu + s2 * x;
    const CumulantFunction kf = cumulant_function(p, x, cfg);
    const double f = std::exp(kf.k);
    const double p2 = p2_polynomial(p, spec.t, x);

    // u form; the scale sums the magnitudes of the Gaussian and MGF parts of each term.
    const double u_rhs = x * e * p2 / c;
    const double u_lhs = x * du.d2 + (b - x) * du.d1 - a * u0;
    const double u_scale = std::abs(x) * (e * (slope * slope + s2) + f * (kf.d2k + kf.dk * kf.dk)) +
                           std::abs(b - x) * (e * std::abs(slope) + f * kf.dk) + a * (e + f) +
                           std::abs(u_rhs);
    worst.u_form = std::max(worst.u_form, std::abs(u_lhs - u_rhs) / u_scale);

    // v form, v = C (1 - w) with w = F / E.
    const double w = f / e;
    const double gap = kf.dk - slope;
    const double q1 = q1_polynomial(p, spec.t, x);
    const double q0 = q0_polynomial(p, spec.t, x);
    const double v_rhs = x * p2;
    const double v_lhs = x * dv.d2 + q1 * dv.d1 + q0 * v0;
    const double v_scale = std::abs(x) * c * w * (gap * gap + std::abs(kf.d2k) + s2) +
                           std::abs(q1) * c * w * (kf.dk + std::abs(slope)) +
                           std::abs(q0) * c * (1.0 + w) + std::abs(v_rhs);
    worst.v_form = std::max(worst.v_form, std::abs(v_lhs - v_rhs) / v_scale);
  }
  return worst;
}

double v_second_derivative_formula(const DifferenceFunctionSpec& spec) noexcept {
  const double a = spec.params.alpha();
  const double b = spec.params.beta();
  const double d = b * b - a * a;
  return 4.0 * d * d * (1.0 + a + b) * (1.0 - spec.t);
}

double v_second_derivative_fd(const DifferenceFunctionSpec& spec, double h,
                              const SeriesConfig& cfg) {
  return (v_t(spec, h, cfg) + v_t(spec, -h, cfg)) / (h * h);
}

double v_second_derivative_step(const DifferenceFunctionSpec& spec) {
  // v(h) + v(-h) = C (2A h^2 - (kappa_4 / 12 + A^2) h^4 + ...), A = (sigma2_t - kappa_2) / 2.
  const auto kappa = beta_cumulants(spec.params, 4);
  const double half_gap = 0.5 * (spec.sigma2_t() - kappa[1]);
  if (!(half_gap > 0.0)) return 1e-3;
  const double quartic = std::abs(kappa[3]) / 12.0 + half_gap * half_gap;
  return std::min(1e-3, std::sqrt(1e-6 * 2.0 * half_gap / quartic));
}

double bernoulli_u(double mu, double t, double x) noexcept {
  const double d = 2.0 * mu - 1.0;
  return std::exp(mu * x + x * x / 8.0 - x * x * d * d * t / 8.0) - mu * std::exp(x) + mu - 1.0;
}

double bernoulli_ode_residual(double mu, double t, std::span<const double> x_grid, double h) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mean must lie in (0, 1)");
  const double d = 2.0 * mu - 1.0;
  const double s = (1.0 - d * d * t) / 4.0;
  double worst = 0.0;
  for (double x : x_grid) {
    const Derivatives du = five_point([&](double y) { return bernoulli_u(mu, t, y); }, x, h);
    const double e = std::exp(mu * x + 0.5 * s * x * x);
    const double slope = mu + s * x;
    const double rhs = e * (d * d * (1.0 - t) / 4.0 + d * s * x + s * s * x * x);
    const double scale =
        e * (slope * slope + s + std::abs(slope)) + 2.0 * mu * std::exp(x) + std::abs(rhs);
    worst = std::max(worst, std::abs(du.d2 - du.d1 - rhs) / scale);
  }
  return worst;
}

}  // namespace subgauss
