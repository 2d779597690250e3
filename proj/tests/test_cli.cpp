#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "subgauss/bernoulli.hpp"
#include "subgauss/errors.hpp"

using namespace subgauss;

namespace {

int invoke(std::vector<const char*> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "subgauss");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(args.size()), args.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string sweep_csv(const cli::SweepSpec& spec, unsigned threads) {
  std::ostringstream os;
  cli::write_csv(os, spec, cli::run_sweep(spec, threads));
  return os.str();
}

cli::SweepSpec fixed_sum(double s) {
  cli::SweepSpec spec;
  spec.family = cli::SweepFamily::BetaFixedSum;
  spec.fixed_sum = s;
  spec.grid = {0.0, 1.0, 99, false};
  return spec;
}

}  // namespace

TEST_CASE("distribution parsing") {
  CHECK(std::get<BetaParams>(cli::parse_distribution("beta:1,2")).beta() == 2.0);
  CHECK(std::get<BernoulliParams>(cli::parse_distribution("bernoulli:0.25")).mu() == 0.25);
  CHECK(std::get<DirichletParams>(cli::parse_distribution("dirichlet:1,2,3")).dim() == 3);
  CHECK_THROWS_AS(cli::parse_distribution("beta:1"), ParseError);
  CHECK_THROWS_AS(cli::parse_distribution("gamma:1,2"), ParseError);
  CHECK_THROWS_AS(cli::parse_distribution("beta:1,x"), ParseError);
  CHECK_THROWS_AS(cli::parse_distribution("beta:-1,2"), DomainError);
  CHECK_THROWS_AS(cli::parse_distribution("bernoulli:1.5"), DomainError);
}

TEST_CASE("compute examples") {
  CHECK(cli::compute(cli::parse_distribution("beta:1,1")).result.sigma2_opt ==
        doctest::Approx(1.0 / 12).epsilon(1e-14));
  CHECK(cli::compute(cli::parse_distribution("bernoulli:0.25")).result.sigma2_opt ==
        doctest::Approx(1.0 / (4.0 * std::log(3.0))).epsilon(1e-14));
  CHECK(cli::compute(cli::parse_distribution("dirichlet:1,2,3")).result.sigma2_opt ==
        doctest::Approx(1.0 / 28).epsilon(1e-12));
}

TEST_CASE("compute JSON round-trips") {
  const auto out = cli::compute(cli::parse_distribution("beta:0.3,4"));
  const auto j = nlohmann::json::parse(cli::compute_json(out));
  CHECK(j["sigma2_opt"].get<double>() == out.result.sigma2_opt);
  CHECK(j["x0"].get<double>() == out.result.x0);
  CHECK(j["variance"].get<double>() == out.variance);
  CHECK(j["simple_bound"].get<double>() == out.simple_bound);
  CHECK(j["kearns_saul"].get<double>() == out.kearns_saul);
  CHECK(j["residual"].get<double>() == out.result.residual);
}

TEST_CASE("exit codes") {
  std::string text;
  CHECK(invoke({"compute", "beta:1,2", "--json"}, &text) == cli::kOk);
  CHECK(nlohmann::json::parse(text).is_object());
  CHECK(invoke({"compute", "beta:1"}) == cli::kUsage);
  CHECK(invoke({"compute", "beta:0,2"}) == cli::kUsage);
  CHECK(invoke({"frobnicate"}) == cli::kUsage);
  CHECK(invoke({"sweep", "--family", "beta-fixed-sum", "--min", "0", "--max", "1", "--count", "9",
                "--out", "-"}) == cli::kUsage);
  CHECK(invoke({"verify", "beta:2,2", "--fast"}, &text) == cli::kOk);
  CHECK(text.find("SKIPPED") != std::string::npos);
  CHECK(invoke({"verify", "dirichlet:1,1,1", "--fast"}) == cli::kOk);
}

TEST_CASE("verify JSON is an array of checks") {
  std::string text;
  REQUIRE(invoke({"verify", "beta:1,2", "--fast", "--json"}, &text) == cli::kOk);
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j.is_array());
  CHECK(j.size() > 4);
  for (const auto& c : j) CHECK(c.contains("threshold"));
}

TEST_CASE("sweeps are deterministic across thread counts") {
  const auto spec = fixed_sum(1.0);
  const std::string one = sweep_csv(spec, 1);
  CHECK(one == sweep_csv(spec, 4));
  CHECK(one == sweep_csv(spec, 0));
  CHECK(one.rfind("mu,variance,sigma2_opt,simple_bound,kearns_saul\n", 0) == 0);
  CHECK(one.find('\r') == std::string::npos);
}

TEST_CASE("fixed-sum 10 lies below fixed-sum 0.1") {
  const auto lo = cli::run_sweep(fixed_sum(10.0), 0);
  const auto hi = cli::run_sweep(fixed_sum(0.1), 0);
  REQUIRE(lo.size() == hi.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    REQUIRE(lo[i].sigma2_opt);
    REQUIRE(hi[i].sigma2_opt);
    CHECK(*lo[i].sigma2_opt < *hi[i].sigma2_opt);
  }
}

TEST_CASE("fixed-sum 1 peaks at 1/8") {
  const auto rows = cli::run_sweep(fixed_sum(1.0), 0);
  REQUIRE(rows.size() == 99);
  CHECK(rows[49].mu == doctest::Approx(0.5));
  CHECK(*rows[49].sigma2_opt == doctest::Approx(0.125).epsilon(1e-14));
  for (const auto& r : rows) CHECK(*r.sigma2_opt <= 0.125 + 1e-15);
}

TEST_CASE("Bernoulli sweep peaks at 1/4") {
  cli::SweepSpec spec;
  spec.family = cli::SweepFamily::Bernoulli;
  spec.grid = {0.0, 1.0, 99, false};
  const auto rows = cli::run_sweep(spec, 0);
  double best = 0.0;
  double at = 0.0;
  for (const auto& r : rows) {
    if (*r.sigma2_opt > best) {
      best = *r.sigma2_opt;
      at = r.mu;
    }
  }
  CHECK(best == 0.25);
  CHECK(at == doctest::Approx(0.5));
}

TEST_CASE("sweep spec validation") {
  cli::SweepSpec spec = fixed_sum(1.0);
  spec.grid.count = 1;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = fixed_sum(1.0);
  spec.fixed_sum.reset();
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec.family = cli::SweepFamily::BetaGrid;
  spec.grid = {0.0, 4.0, 5, true};
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec.grid = {0.2, 4.0, 5, true};
  CHECK_NOTHROW(spec.validate());
  const auto pts = cli::axis_points(spec.grid, false);
  CHECK(pts.front() == doctest::Approx(0.2));
  CHECK(pts.back() == doctest::Approx(4.0));
}
