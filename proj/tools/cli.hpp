#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "subgauss/beta.hpp"
#include "subgauss/params.hpp"
#include "subgauss/report.hpp"

namespace subgauss::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

using Distribution = std::variant<BetaParams, BernoulliParams, DirichletParams>;

/// Parses "beta:a,b", "bernoulli:mu" or "dirichlet:a1,...,ad".
/// Throws ParseError on malformed text and DomainError on invalid values.
Distribution parse_distribution(std::string_view spec);

struct ComputeOutput {
  std::string family;
  std::vector<double> params;
  ProxyResult result;
  double mean = 0.0;
  double variance = 0.0;
  double simple_bound = 0.0;
  double kearns_saul = 0.0;
  bool strictly_subgaussian = false;
  /// Reduced Beta pair for Dirichlet inputs.
  std::optional<BetaParams> reduced;
};

ComputeOutput compute(const Distribution& dist, const SolverConfig& cfg = {});
std::string compute_json(const ComputeOutput& out);
std::string compute_text(const ComputeOutput& out);

enum class SweepFamily { BetaFixedSum, BetaGrid, Bernoulli };

SweepFamily parse_family(std::string_view name);

struct GridAxis {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 99;
  bool log_scale = false;
};

struct SweepSpec {
  SweepFamily family = SweepFamily::BetaFixedSum;
  std::optional<double> fixed_sum;
  GridAxis grid;

  /// Throws DomainError: count >= 2, min < max, min > 0 on a log scale,
  /// mean grids inside [0, 1], fixed_sum present and positive for BetaFixedSum.
  void validate() const;
};

/// Mean grids (BetaFixedSum, Bernoulli) are cell-centred so 0 and 1 are never
/// hit; the BetaGrid axis includes both endpoints.
std::vector<double> axis_points(const GridAxis& axis, bool cell_centred);

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 0.0;
  double variance = 0.0;
  std::optional<double> sigma2_opt;
  double simple_bound = 0.0;
  double kearns_saul = 0.0;
  std::string error;
};

/// Rows in grid order. Rows may be evaluated on several threads; the result
/// does not depend on the thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Header mu,variance,sigma2_opt,simple_bound,kearns_saul (prefixed by
/// alpha,beta for BetaGrid); failed rows leave sigma2_opt empty.
void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);

enum class VerifyMode { Fast, Full };

VerifyReport run_verify(const Distribution& dist, VerifyMode mode, std::uint64_t seed);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subgauss::cli
