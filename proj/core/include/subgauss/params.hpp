#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace subgauss {

/// Shape parameters of a Beta(alpha, beta) law on [0, 1]. Both must be
/// finite and strictly positive; the constructor throws DomainError otherwise.
class BetaParams {
 public:
  BetaParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double sum() const noexcept { return alpha_ + beta_; }
  double mean() const noexcept { return alpha_ / (alpha_ + beta_); }

  /// The law of 1 - X.
  BetaParams mirrored() const noexcept { return BetaParams(beta_, alpha_, Unchecked{}); }

 private:
  struct Unchecked {};
  BetaParams(double alpha, double beta, Unchecked) noexcept : alpha_(alpha), beta_(beta) {}

  double alpha_;
  double beta_;
};

/// Success probability of a Bernoulli law, restricted to the open interval (0, 1).
class BernoulliParams {
 public:
  explicit BernoulliParams(double mu);
  double mu() const noexcept { return mu_; }

 private:
  double mu_;
};

/// Concentration vector of a Dirichlet law; at least two strictly positive entries.
class DirichletParams {
 public:
  explicit DirichletParams(std::vector<double> alphas);

  std::span<const double> alphas() const noexcept { return alphas_; }
  std::size_t dim() const noexcept { return alphas_.size(); }
  double operator[](std::size_t i) const { return alphas_.at(i); }
  double alpha_bar() const noexcept { return alpha_bar_; }
  double alpha_max() const noexcept { return alpha_max_; }
  /// Index of the first maximal component.
  std::size_t argmax() const noexcept { return argmax_; }
  std::vector<double> mean() const;

 private:
  std::vector<double> alphas_;
  double alpha_bar_ = 0.0;
  double alpha_max_ = 0.0;
  std::size_t argmax_ = 0;
};

/// Exponent vector n of a mixed moment E[prod X_i^{n_i}].
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> n) : n_(std::move(n)) {}

  std::span<const unsigned> values() const noexcept { return n_; }
  std::size_t dim() const noexcept { return n_.size(); }
  unsigned operator[](std::size_t i) const { return n_.at(i); }
  unsigned total() const noexcept;

 private:
  std::vector<unsigned> n_;
};

}  // namespace subgauss
