#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "subgauss/beta.hpp"
#include "subgauss/dirichlet.hpp"
#include "subgauss/errors.hpp"
#include "subgauss/kummer.hpp"
#include "subgauss/verify.hpp"

using namespace subgauss;

TEST_CASE("moments") {
  CHECK(dirichlet_moment(DirichletParams({1, 1}), MultiIndex({1, 0})) == doctest::Approx(0.5));
  CHECK(dirichlet_moment(DirichletParams({1, 2, 3}), MultiIndex({0, 0, 0})) == 1.0);
  CHECK(dirichlet_moment(DirichletParams({1, 2, 3}), MultiIndex({1, 1, 0})) ==
        doctest::Approx(1.0 / 21).epsilon(1e-14));
  CHECK_THROWS_AS(dirichlet_moment(DirichletParams({1, 2, 3}), MultiIndex({1, 1})), DomainError);
}

TEST_CASE("covariance, zero-based indices") {
  const DirichletParams two({1, 1});
  CHECK(dirichlet_covariance(two, 0, 0) == doctest::Approx(1.0 / 12));
  CHECK(dirichlet_covariance(two, 0, 1) == doctest::Approx(-1.0 / 12));
  const DirichletParams three({1, 2, 3});
  CHECK(dirichlet_covariance(three, 0, 1) == doctest::Approx(-1.0 / 126).epsilon(1e-14));
  // diagonal from the moment formula
  const double m1 = dirichlet_moment(three, MultiIndex({0, 0, 1}));
  const double m2 = dirichlet_moment(three, MultiIndex({0, 0, 2}));
  CHECK(dirichlet_covariance(three, 2, 2) == doctest::Approx(m2 - m1 * m1).epsilon(1e-13));
  CHECK_THROWS_AS(dirichlet_covariance(three, 0, 3), DomainError);
}

TEST_CASE("marginals") {
  const DirichletParams d({1, 2, 3});
  const std::vector<std::size_t> first{0};
  const std::vector<std::size_t> pair{0, 1};
  CHECK(marginal_beta(d, first).alpha() == 1.0);
  CHECK(marginal_beta(d, first).beta() == 5.0);
  CHECK(marginal_beta(d, pair).alpha() == 3.0);
  CHECK(marginal_beta(d, pair).beta() == 3.0);
  const std::vector<std::size_t> none;
  const std::vector<std::size_t> all{0, 1, 2};
  CHECK_THROWS_AS(marginal_beta(d, none), EmptyOrFullSubset);
  CHECK_THROWS_AS(marginal_beta(d, all), EmptyOrFullSubset);
}

TEST_CASE("optimal proxy examples") {
  CHECK(oracle::rel_err(dirichlet_optimal_proxy(DirichletParams({1, 2, 3})).sigma2_opt, 1.0 / 28) <=
        1e-12);
  CHECK(dirichlet_optimal_proxy(DirichletParams({1, 1})).sigma2_opt == doctest::Approx(1.0 / 12));
  const double s = dirichlet_optimal_proxy(DirichletParams({1, 1, 1})).sigma2_opt;
  CHECK(s == optimal_proxy_variance(BetaParams(1, 2)).sigma2_opt);
  CHECK(oracle::rel_err(s, sup_ratio_oracle(BetaParams(1, 2)).sigma2) <= 1e-6);
}

TEST_CASE("reduction picks the largest marginal and ignores order") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> comp(0.2, 5.0);
  std::uniform_int_distribution<int> dim(2, 5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> a(dim(rng));
    for (double& x : a) x = comp(rng);
    const DirichletParams d(a);
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      best = std::max(best, optimal_proxy_variance(BetaParams(a[i], d.alpha_bar() - a[i])).sigma2_opt);
    }
    const double s = dirichlet_optimal_proxy(d).sigma2_opt;
    CHECK(oracle::rel_err(s, best) <= 1e-12);
    std::shuffle(a.begin(), a.end(), rng);
    CHECK(oracle::rel_err(dirichlet_optimal_proxy(DirichletParams(a)).sigma2_opt, s) <= 1e-12);
  }
}

TEST_CASE("directional proxy") {
  const DirichletParams d({1, 2, 3});
  const std::vector<double> e3{0, 0, 1};
  CHECK(oracle::rel_err(directional_proxy(d, e3), 1.0 / 28) <= 1e-12);
  const std::vector<double> half{0.5, 0.5};
  CHECK(directional_proxy(DirichletParams({1, 1}), half) == doctest::Approx(1.0 / 24));
  const std::vector<double> e1{1, 0, 0};
  CHECK(directional_proxy(DirichletParams({2, 2, 2}), e1) ==
        optimal_proxy_variance(BetaParams(2, 4)).sigma2_opt);
  const std::vector<double> off{0.5, 0.6, 0.0};
  const std::vector<double> neg{1.2, -0.2, 0.0};
  const std::vector<double> short_u{1.0};
  CHECK_THROWS_AS(directional_proxy(d, off), NotOnSimplex);
  CHECK_THROWS_AS(directional_proxy(d, neg), NotOnSimplex);
  CHECK_THROWS_AS(directional_proxy(d, short_u), NotOnSimplex);
}

TEST_CASE("strict sub-Gaussianity") {
  CHECK(is_strictly_subgaussian_dirichlet(DirichletParams({3, 3})));
  CHECK_FALSE(is_strictly_subgaussian_dirichlet(DirichletParams({1, 1, 1})));
  CHECK_FALSE(is_strictly_subgaussian_dirichlet(DirichletParams({1, 2})));
}

TEST_CASE("Pochhammer product inequality") {
  CHECK(pochhammer_product_inequality(2.0, MultiIndex({1, 1})));
  CHECK(pochhammer_product_inequality(1.0, MultiIndex({2, 3})));
  CHECK(pochhammer_product_inequality(0.7, MultiIndex({9, 0, 0})));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> abar(0.05, 50.0);
  std::uniform_int_distribution<unsigned> part(0, 30);
  std::uniform_int_distribution<int> dim(2, 6);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<unsigned> n(dim(rng));
    for (unsigned& k : n) k = part(rng);
    if (!pochhammer_product_inequality(abar(rng), MultiIndex(n))) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("MGF series is dominated by the product of marginal MGFs") {
  // The termwise comparison needs lambda inside one orthant.
  const DirichletParams d({1, 2, 3});
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 40; ++i) {
    std::vector<double> l(3);
    double norm = 0.0;
    for (double& x : l) {
      x = std::abs(gauss(rng));
      norm += x * x;
    }
    const double radius = 5.0 * (i + 1) / 40.0 * (i % 2 == 0 ? 1.0 : -1.0);
    for (double& x : l) x *= radius / std::sqrt(norm);
    double prod = 1.0;
    for (std::size_t k = 0; k < 3; ++k) prod *= kummer_1f1(KummerArgs(d[k], d.alpha_bar(), l[k]));
    CHECK(dirichlet_mgf_series(d, l, 40) <= prod + 1e-8);
  }
}

TEST_CASE("MGF series converges to the one-dimensional MGF") {
  // lambda on a single coordinate reduces to the Beta marginal.
  const DirichletParams d({0.5, 1.5, 2.0});
  const std::vector<double> l{0.0, 3.0, 0.0};
  const double want = kummer_1f1(KummerArgs(1.5, 4.0, 3.0));
  CHECK(oracle::rel_err(dirichlet_mgf_series(d, l, 40), want) <= 1e-12);
}

TEST_CASE("directional Monte Carlo domination") {
  const DirichletParams d({1, 2, 3});
  const double s2 = dirichlet_optimal_proxy(d).sigma2_opt;
  const std::vector<double> lambdas{-10, -5, -1, 1, 5, 10};
  std::mt19937_64 rng(31);
  std::exponential_distribution<double> expo;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> u(3);
    double total = 0.0;
    for (double& x : u) total += (x = expo(rng));
    for (double& x : u) x /= total;
    const VerifyReport rep = directional_mgf_check(d, u, s2, lambdas, 100000, 100 + k);
    CHECK(rep.all_passed());
  }
}
