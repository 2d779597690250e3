#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "subgauss/errors.hpp"
#include "subgauss/sampling.hpp"
#include "subgauss/verify.hpp"

namespace subgauss {
namespace {

constexpr std::size_t kMinSamples = 100000;
constexpr std::array<double, 3> kEpsilons{0.1, 0.2, 0.3};

struct ScalarDraw {
  Engine& rng;

  double operator()(const BetaParams& p) const { return sample_beta(p, rng); }
  double operator()(const BernoulliParams& p) const {
    return std::bernoulli_distribution(p.mu())(rng) ? 1.0 : 0.0;
  }
  double operator()(const DirectionalDirichlet& d) const {
    const auto x = sample_dirichlet(d.params, rng);
    double y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) y += d.direction[i] * x[i];
    return y;
  }
};

struct ScalarMean {
  double operator()(const BetaParams& p) const { return p.mean(); }
  double operator()(const BernoulliParams& p) const { return p.mu(); }
  double operator()(const DirectionalDirichlet& d) const {
    const auto m = d.params.mean();
    double y = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) y += d.direction[i] * m[i];
    return y;
  }
};

std::string label(const char* stem, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", stem, value);
  return buf;
}

}  // namespace

VerifyReport chernoff_tail_check(const TailTarget& target, double sigma2, std::size_t n_samples,
                                 std::uint64_t seed) {
  if (n_samples < kMinSamples) throw DomainError("Chernoff check needs at least 1e5 samples");
  if (!(sigma2 > 0.0)) throw DomainError("proxy variance must be positive");
  if (const auto* d = std::get_if<DirectionalDirichlet>(&target);
      d && d->direction.size() != d->params.dim()) {
    throw NotOnSimplex("direction dimension mismatch");
  }

  Engine rng(seed);
  const double mean = std::visit(ScalarMean{}, target);
  std::array<std::size_t, kEpsilons.size()> upper{};
  std::array<std::size_t, kEpsilons.size()> lower{};
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double y = std::visit(ScalarDraw{rng}, target) - mean;
    for (std::size_t k = 0; k < kEpsilons.size(); ++k) {
      if (y > kEpsilons[k]) ++upper[k];
      if (-y > kEpsilons[k]) ++lower[k];
    }
  }

  VerifyReport report;
  const double n = static_cast<double>(n_samples);
  for (std::size_t k = 0; k < kEpsilons.size(); ++k) {
    const double eps = kEpsilons[k];
    const double bound = std::exp(-eps * eps / (2.0 * sigma2));
    for (int side = 0; side < 2; ++side) {
      const double freq = static_cast<double>(side == 0 ? upper[k] : lower[k]) / n;
      const double limit = bound + 3.0 * std::sqrt(freq * (1.0 - freq) / n);
      report.add(label(side == 0 ? "chernoff_upper_tail eps" : "chernoff_lower_tail eps", eps),
                 freq <= limit, freq, limit);
    }
  }
  return report;
}

VerifyReport directional_mgf_check(const DirichletParams& params, std::span<const double> u,
                                   double sigma2, std::span<const double> lambdas,
                                   std::size_t n_samples, std::uint64_t seed) {
  if (u.size() != params.dim()) throw NotOnSimplex("direction dimension mismatch");
  Engine rng(seed);
  const auto m = params.mean();
  double center = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) center += u[i] * m[i];

  std::vector<double> sum(lambdas.size(), 0.0);
  std::vector<double> sum_sq(lambdas.size(), 0.0);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto x = sample_dirichlet(params, rng);
    double y = -center;
    for (std::size_t i = 0; i < u.size(); ++i) y += u[i] * x[i];
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      const double z = std::exp(lambdas[k] * y);
      sum[k] += z;
      sum_sq[k] += z * z;
    }
  }

  VerifyReport report;
  const double n = static_cast<double>(n_samples);
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double mgf = sum[k] / n;
    const double var = std::max(0.0, sum_sq[k] / n - mgf * mgf);
    const double limit = std::exp(0.5 * lambdas[k] * lambdas[k] * sigma2) + 3.0 * std::sqrt(var / n);
    report.add(label("directional_mgf lambda", lambdas[k]), mgf <= limit, mgf, limit);
  }
  return report;
}

}  // namespace subgauss
