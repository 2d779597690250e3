#include "subgauss/params.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "subgauss/errors.hpp"

namespace subgauss {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

BetaParams::BetaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!positive_finite(alpha) || !positive_finite(beta)) {
    throw DomainError("Beta parameters must be positive and finite, got alpha=" +
                      std::to_string(alpha) + " beta=" + std::to_string(beta));
  }
}

BernoulliParams::BernoulliParams(double mu) : mu_(mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw DomainError("Bernoulli mean must lie in (0, 1), got " + std::to_string(mu));
  }
}

DirichletParams::DirichletParams(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.size() < 2) {
    throw DomainError("Dirichlet needs at least two components");
  }
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    if (!positive_finite(alphas_[i])) {
      throw DomainError("Dirichlet component " + std::to_string(i) +
                        " must be positive and finite, got " + std::to_string(alphas_[i]));
    }
    alpha_bar_ += alphas_[i];
    if (alphas_[i] > alpha_max_) {
      alpha_max_ = alphas_[i];
      argmax_ = i;
    }
  }
}

std::vector<double> DirichletParams::mean() const {
  std::vector<double> m(alphas_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = alphas_[i] / alpha_bar_;
  return m;
}

unsigned MultiIndex::total() const noexcept { return std::accumulate(n_.begin(), n_.end(), 0u); }

}  // namespace subgauss
