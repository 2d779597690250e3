#include <doctest.h>

#include <cmath>

#include "grids.hpp"
#include "oracles.hpp"
#include "subgauss/bernoulli.hpp"
#include "subgauss/beta.hpp"
#include "subgauss/errors.hpp"
#include "subgauss/verify.hpp"

using namespace subgauss;

TEST_CASE("variance and simple bound") {
  CHECK(variance(BetaParams(1, 1)) == doctest::Approx(1.0 / 12));
  CHECK(variance(BetaParams(2, 2)) == doctest::Approx(1.0 / 20));
  CHECK(variance(BetaParams(1, 2)) == doctest::Approx(1.0 / 18));
  CHECK(simple_upper_bound(BetaParams(1, 1)) == doctest::Approx(1.0 / 12));
  CHECK(simple_upper_bound(BetaParams(0.5, 0.5)) == doctest::Approx(1.0 / 8));
  CHECK(simple_upper_bound(BetaParams(1, 3)) == doctest::Approx(1.0 / 20));
  const BetaParams p(0.7, 3.0);
  CHECK(interpolated_sigma2(p, 0.0) == simple_upper_bound(p));
  CHECK(interpolated_sigma2(p, 1.0) == doctest::Approx(variance(p)).epsilon(1e-15));
}

TEST_CASE("symmetric closed form") {
  CHECK(optimal_proxy_variance(BetaParams(1, 1)).sigma2_opt == doctest::Approx(1.0 / 12));
  CHECK(optimal_proxy_variance(BetaParams(0.5, 0.5)).sigma2_opt == doctest::Approx(1.0 / 8));
  CHECK(optimal_proxy_variance(BetaParams(2, 2)).sigma2_opt == doctest::Approx(1.0 / 20));
  CHECK(optimal_proxy_variance(BetaParams(10, 10)).sigma2_opt == doctest::Approx(1.0 / 84));
  const ProxyResult r = optimal_proxy_variance(BetaParams(3, 3));
  CHECK(r.branch == Branch::Symmetric);
  CHECK(r.x0 == 0.0);
  CHECK(r.t_opt == 1.0);
  CHECK(is_strictly_subgaussian(BetaParams(1, 1)));
  CHECK(is_strictly_subgaussian(BetaParams(1.5, 1.5)));
  CHECK_FALSE(is_strictly_subgaussian(BetaParams(1, 2)));
}

TEST_CASE("transcendental system against 50-digit values") {
  using oracle::Real;
  const double a = 1.0;
  const double b = 3.0;
  const double x = 1.0;
  const Real f0 = oracle::kummer_series(a, b, x);
  const Real ratio = oracle::kummer_series(a + 1, b + 1, x) / f0;
  const Real mu = Real(a) / b;
  const double f_ref = static_cast<double>(boost::multiprecision::log(f0) - mu * x * (1 + ratio) / 2);
  const double s_ref = static_cast<double>(mu * (ratio - 1) / x);

  const TranscendentalValue v = transcendental_system(BetaParams(1, 2), x);
  CHECK(std::abs(v.f - f_ref) < 1e-15);
  CHECK(oracle::rel_err(v.sigma2_at_x, s_ref) < 1e-13);

  const TranscendentalValue m = transcendental_system(BetaParams(2, 1), -x);
  CHECK(m.f == doctest::Approx(v.f).epsilon(1e-13));
  CHECK(m.sigma2_at_x == doctest::Approx(v.sigma2_at_x).epsilon(1e-13));

  CHECK_THROWS_AS(transcendental_system(BetaParams(1, 1), 1.0), DomainError);
  CHECK_THROWS_AS(transcendental_system(BetaParams(1, 2), -1.0), DomainError);
}

TEST_CASE("sigma2_at_x tends to the variance at 0") {
  const BetaParams p(1, 2);
  CHECK(transcendental_system(p, 1e-6).sigma2_at_x == doctest::Approx(variance(p)).epsilon(1e-6));
}

TEST_CASE("both sides of the series switch match 50-digit values") {
  for (auto [a, b] : {std::pair{1.0, 2.0}, {0.3, 4.0}, {5.0, 9.0}, {0.15, 0.2}}) {
    const BetaParams p(a, b);
    for (double x : {0.999999e-2, 1.000001e-2}) {
      const oracle::Real f = oracle::kummer_series(a, a + b, x, 200);
      const oracle::Real r = oracle::kummer_series(a + 1, a + b + 1, x, 200) / f;
      const oracle::Real mu = oracle::Real(a) / (a + b);
      const double sigma2 = static_cast<double>(mu * (r - 1) / x);
      const double fx = static_cast<double>(log(f) - mu * x * (1 + r) / 2);
      const TranscendentalValue v = transcendental_system(p, x);
      CHECK(oracle::rel_err(v.sigma2_at_x, sigma2) < 1e-12);
      CHECK(oracle::rel_err(v.f, fx) < 1e-6);
    }
  }
}

TEST_CASE("reference value for Beta(1, 2)") {
  const ProxyResult r = optimal_proxy_variance(BetaParams(1, 2));
  CHECK(r.branch == Branch::Transcendental);
  CHECK(r.sigma2_opt > 1.0 / 18);
  CHECK(r.sigma2_opt < 1.0 / 16);
  const SupRatio o = sup_ratio_oracle(BetaParams(1, 2));
  CHECK(oracle::rel_err(r.sigma2_opt, o.sigma2) < 1e-6);
  CHECK(std::abs(r.x0 - o.argmax) < 1e-4);
  CHECK(r.x0 > 0.0);
  CHECK(r.residual <= 1e-12);
}

TEST_CASE("sandwich, ceiling and symmetry on the grid") {
  for (const BetaParams& p : grids::sandwich_pairs()) {
    CAPTURE(p.alpha());
    CAPTURE(p.beta());
    const ProxyResult r = optimal_proxy_variance(p);
    const double var = variance(p);
    const double top = simple_upper_bound(p);
    CHECK(r.sigma2_opt > var);
    CHECK(r.sigma2_opt < top);
    if (std::abs(p.alpha() - p.beta()) / p.sum() >= 0.05) {
      CHECK(r.sigma2_opt - var >= 1e-12);
      CHECK(top - r.sigma2_opt >= 1e-12);
    }
    CHECK(r.sigma2_opt <= kearns_saul_proxy(p.mean()));
    CHECK((r.x0 > 0.0) == (p.beta() > p.alpha()));
    CHECK(r.t_opt > 0.0);
    CHECK(r.t_opt < 1.0);

    const ProxyResult m = optimal_proxy_variance(p.mirrored());
    CHECK(oracle::rel_err(m.sigma2_opt, r.sigma2_opt) <= 1e-12);
    CHECK(std::abs(m.x0 + r.x0) <= 1e-9 * std::max(1.0, std::abs(r.x0)));
  }
}

TEST_CASE("nearly symmetric pairs stay continuous") {
  const double closed = 1.0 / (4.0 * 3.0);
  for (double d : {1e-9, 1e-7, 1e-5, 1e-3}) {
    const ProxyResult r = optimal_proxy_variance(BetaParams(1.0, 1.0 + d));
    CHECK(r.branch == Branch::Transcendental);
    CHECK(std::abs(r.sigma2_opt - closed) < 10 * d);
  }
  CHECK(optimal_proxy_variance(BetaParams(1.0, 1.0 + 1e-11)).branch == Branch::Symmetric);
}

TEST_CASE("extreme shapes") {
  for (auto [a, b] : {std::pair{0.01, 200.0}, {1e-3, 5.0}, {1000.0, 1.0}, {0.05, 0.07}}) {
    const BetaParams p(a, b);
    const ProxyResult r = optimal_proxy_variance(p);
    CHECK(r.sigma2_opt > variance(p));
    CHECK(r.sigma2_opt < simple_upper_bound(p));
    CHECK(mgf_domination_margin(p, r.sigma2_opt, std::max(50.0, 1.5 * std::abs(r.x0)), 4001) >= -1e-10);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(optimal_proxy_variance(BetaParams(1, 2), SolverConfig{0.0}), DomainError);
  SolverConfig tight;
  tight.max_iter = 3;
  CHECK_THROWS_AS(optimal_proxy_variance(BetaParams(1, 2), tight), NumericalError);
  CHECK_THROWS_AS(BetaParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(BetaParams(1.0, INFINITY), DomainError);
  CHECK(to_string(Branch::BernoulliLimit) == "bernoulli_limit");
}
