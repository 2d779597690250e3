#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "subgauss/bernoulli.hpp"
#include "subgauss/dirichlet.hpp"
#include "subgauss/errors.hpp"
#include "subgauss/sampling.hpp"
#include "subgauss/verify.hpp"

namespace subgauss::cli {
namespace {

constexpr std::size_t kChernoffSamples = 1000000;
constexpr std::size_t kDirectionalSamples = 100000;
constexpr int kRandomDirections = 3;
constexpr double kOracleRelTol = 1e-6;
constexpr double kArgmaxAbsTol = 1e-4;
constexpr double kOracleReach = 190.0;
constexpr double kOdeTol = 1e-6;
constexpr double kDominationTol = 1e-10;
constexpr double kTightnessScale = 1.0 - 1e-3;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text) {
  const std::string s(trim(text));
  if (s.empty()) throw ParseError("empty parameter");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw ParseError("not a number: '" + s + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt17(double v) { return fmt::format("{:.17g}", v); }

std::vector<double> linspace_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return g;
}

// Checks shared by Beta inputs and the reduced pair of a Dirichlet input.
VerifyReport beta_checks(const BetaParams& p, const ProxyResult& r, const std::string& prefix) {
  VerifyReport rep;
  const bool symmetric = r.branch == Branch::Symmetric;

  // The scan covers |lambda| <= 200; a contact point beyond it is out of its reach.
  if (std::abs(r.x0) < kOracleReach) {
    const SupRatio oracle = sup_ratio_oracle_auto(p);
    const double rel = std::abs(oracle.sigma2 - r.sigma2_opt) / r.sigma2_opt;
    rep.add(prefix + "oracle_sigma2_rel_error", rel <= kOracleRelTol, rel, kOracleRelTol);
    const double arg = std::abs(oracle.argmax - r.x0);
    rep.add(prefix + "oracle_argmax_abs_error", arg <= kArgmaxAbsTol, arg, kArgmaxAbsTol);
  } else {
    rep.skip(prefix + "oracle_sigma2_rel_error");
    rep.skip(prefix + "oracle_argmax_abs_error");
  }

  const double var = variance(p);
  const double upper = simple_upper_bound(p);
  const double low_gap = r.sigma2_opt - var;
  const double high_gap = upper - r.sigma2_opt;
  rep.add(prefix + "sandwich_above_variance", symmetric ? low_gap >= 0.0 : low_gap > 0.0, low_gap,
          0.0);
  rep.add(prefix + "sandwich_below_simple_bound", symmetric ? high_gap >= 0.0 : high_gap > 0.0,
          high_gap, 0.0);
  const double ks_gap = kearns_saul_proxy(p.mean()) - r.sigma2_opt;
  rep.add(prefix + "kearns_saul_ceiling", ks_gap >= -1e-15, ks_gap, -1e-15);

  // Widen the [-50, 50] window when the contact point lies beyond it.
  const double reach = std::max(50.0, 1.5 * std::abs(r.x0));
  const auto points = static_cast<std::size_t>(std::ceil(reach / 50.0 * 2000.0)) + 1;
  const double margin = mgf_domination_margin(p, r.sigma2_opt, reach, points);
  rep.add(prefix + "mgf_domination", margin >= -kDominationTol, margin, -kDominationTol);
  const double tight = mgf_domination_margin(p, kTightnessScale * r.sigma2_opt, reach, points);
  rep.add(prefix + "mgf_tightness", tight < 0.0, tight, 0.0);
  return rep;
}

VerifyReport beta_ode_checks(const BetaParams& p, const ProxyResult& r) {
  VerifyReport rep;
  const double sign = p.beta() >= p.alpha() ? 1.0 : -1.0;
  std::vector<double> grid;
  for (int i = 0; i <= 9500; ++i) grid.push_back(sign * (0.5 + 1e-3 * i));
  const OdeResidual res = ode_residual({p, r.t_opt}, grid);
  rep.add("ode_residual_u_form", res.u_form <= kOdeTol, res.u_form, kOdeTol);
  rep.add("ode_residual_v_form", res.v_form <= kOdeTol, res.v_form, kOdeTol);
  if (r.branch == Branch::Symmetric) {
    rep.skip("v_second_derivative_at_zero");
  } else {
    const DifferenceFunctionSpec spec{p, 0.0};
    const double formula = v_second_derivative_formula(spec);
    const double fd = v_second_derivative_fd(spec, v_second_derivative_step(spec));
    const double fd_rel = std::abs(fd - formula) / formula;
    // sigma2_t - kappa_2 is a difference of two rounded values; its relative
    // error bounds how well any finite difference can match the formula.
    const double excess = spec.sigma2_t() - variance(p);
    const double limit = 1e-4 + 8.0 * std::numeric_limits<double>::epsilon() * spec.sigma2_t() / excess;
    rep.add("v_second_derivative_at_zero", fd_rel <= limit, fd_rel, limit);
  }
  return rep;
}

}  // namespace

Distribution parse_distribution(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("distribution must look like family:params, got '" + std::string(spec) + "'");
  }
  const std::string_view family = trim(spec.substr(0, colon));
  const std::vector<double> values = parse_list(spec.substr(colon + 1));
  if (family == "beta") {
    if (values.size() != 2) throw ParseError("beta takes two parameters");
    return BetaParams(values[0], values[1]);
  }
  if (family == "bernoulli") {
    if (values.size() != 1) throw ParseError("bernoulli takes one parameter");
    return BernoulliParams(values[0]);
  }
  if (family == "dirichlet") return DirichletParams(values);
  throw ParseError("unknown distribution family '" + std::string(family) + "'");
}

ComputeOutput compute(const Distribution& dist, const SolverConfig& cfg) {
  ComputeOutput out;
  if (const auto* b = std::get_if<BetaParams>(&dist)) {
    out.family = "beta";
    out.params = {b->alpha(), b->beta()};
    out.result = optimal_proxy_variance(*b, cfg);
    out.mean = b->mean();
    out.variance = variance(*b);
    out.simple_bound = simple_upper_bound(*b);
    out.strictly_subgaussian = is_strictly_subgaussian(*b, cfg.symmetric_tol);
  } else if (const auto* q = std::get_if<BernoulliParams>(&dist)) {
    out.family = "bernoulli";
    out.params = {q->mu()};
    out.result = bernoulli_proxy_result(*q);
    out.mean = q->mu();
    out.variance = q->mu() * (1.0 - q->mu());
    out.simple_bound = 0.25;
    out.strictly_subgaussian = q->mu() == 0.5;
  } else {
    const auto& d = std::get<DirichletParams>(dist);
    out.family = "dirichlet";
    out.params.assign(d.alphas().begin(), d.alphas().end());
    const BetaParams reduced(d.alpha_max(), d.alpha_bar() - d.alpha_max());
    out.reduced = reduced;
    out.result = dirichlet_optimal_proxy(d, cfg);
    out.mean = reduced.mean();
    out.variance = variance(reduced);
    out.simple_bound = simple_upper_bound(reduced);
    out.strictly_subgaussian = is_strictly_subgaussian_dirichlet(d, cfg.symmetric_tol);
  }
  out.kearns_saul = kearns_saul_proxy(out.mean);
  return out;
}

std::string compute_json(const ComputeOutput& out) {
  nlohmann::ordered_json j;
  j["family"] = out.family;
  j["params"] = out.params;
  j["sigma2_opt"] = out.result.sigma2_opt;
  j["variance"] = out.variance;
  j["simple_bound"] = out.simple_bound;
  j["kearns_saul"] = out.kearns_saul;
  j["mean"] = out.mean;
  j["x0"] = out.result.x0;
  j["t_opt"] = out.result.t_opt;
  j["branch"] = std::string(to_string(out.result.branch));
  j["residual"] = out.result.residual;
  j["iterations"] = out.result.iterations;
  j["strictly_subgaussian"] = out.strictly_subgaussian;
  if (out.reduced) j["reduced_beta"] = {out.reduced->alpha(), out.reduced->beta()};
  // Shortest round-trip output, never more than 17 significant digits.
  return j.dump(2);
}

std::string compute_text(const ComputeOutput& out) {
  std::string params;
  for (std::size_t i = 0; i < out.params.size(); ++i) {
    params += (i ? "," : "") + fmt::format("{:.6g}", out.params[i]);
  }
  std::string s = fmt::format("distribution          {}({})\n", out.family, params);
  if (out.reduced) {
    s += fmt::format("reduced pair          beta({:.6g},{:.6g})\n", out.reduced->alpha(),
                     out.reduced->beta());
  }
  s += fmt::format("sigma2_opt            {:.6g}\n", out.result.sigma2_opt);
  s += fmt::format("variance              {:.6g}\n", out.variance);
  s += fmt::format("simple upper bound    {:.6g}\n", out.simple_bound);
  s += fmt::format("kearns-saul bound     {:.6g}\n", out.kearns_saul);
  s += fmt::format("x0                    {:.6g}\n", out.result.x0);
  s += fmt::format("t_opt                 {:.6g}\n", out.result.t_opt);
  s += fmt::format("branch                {}\n", to_string(out.result.branch));
  s += fmt::format("residual              {:.6g}\n", out.result.residual);
  s += fmt::format("strictly sub-gaussian {}\n", out.strictly_subgaussian ? "yes" : "no");
  return s;
}

SweepFamily parse_family(std::string_view name) {
  if (name == "beta-fixed-sum" || name == "fixed-sum") return SweepFamily::BetaFixedSum;
  if (name == "beta-grid" || name == "grid") return SweepFamily::BetaGrid;
  if (name == "bernoulli") return SweepFamily::Bernoulli;
  throw ParseError("unknown sweep family '" + std::string(name) +
                   "' (expected beta-fixed-sum, beta-grid or bernoulli)");
}

void SweepSpec::validate() const {
  if (grid.count < 2) throw DomainError("sweep count must be at least 2");
  if (!(grid.min < grid.max)) throw DomainError("sweep min must be below max");
  if (grid.log_scale && !(grid.min > 0.0)) throw DomainError("log scale requires min > 0");
  if (family != SweepFamily::BetaGrid && (grid.min < 0.0 || grid.max > 1.0)) {
    throw DomainError("mean grid must lie inside [0, 1]");
  }
  if (family == SweepFamily::BetaGrid && !(grid.min > 0.0)) {
    throw DomainError("Beta parameter grid requires min > 0");
  }
  if (family == SweepFamily::BetaFixedSum && !(fixed_sum && *fixed_sum > 0.0)) {
    throw DomainError("beta-fixed-sum sweep needs a positive --fixed-sum");
  }
}

std::vector<double> axis_points(const GridAxis& axis, bool cell_centred) {
  std::vector<double> pts(axis.count);
  const double n = static_cast<double>(axis.count);
  const double lo = axis.log_scale ? std::log(axis.min) : axis.min;
  const double hi = axis.log_scale ? std::log(axis.max) : axis.max;
  for (std::size_t i = 0; i < axis.count; ++i) {
    const double frac = cell_centred ? (static_cast<double>(i) + 0.5) / n
                                     : static_cast<double>(i) / (n - 1.0);
    const double v = lo + (hi - lo) * frac;
    pts[i] = axis.log_scale ? std::exp(v) : v;
  }
  if (!cell_centred && !axis.log_scale) {
    pts.front() = axis.min;
    pts.back() = axis.max;
  }
  return pts;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  std::vector<SweepRow> rows;
  if (spec.family == SweepFamily::BetaGrid) {
    const auto pts = axis_points(spec.grid, false);
    for (double a : pts) {
      for (double b : pts) {
        SweepRow r;
        r.alpha = a;
        r.beta = b;
        rows.push_back(r);
      }
    }
  } else {
    for (double mu : axis_points(spec.grid, true)) {
      SweepRow r;
      r.mu = mu;
      if (spec.family == SweepFamily::BetaFixedSum) {
        r.alpha = mu * *spec.fixed_sum;
        r.beta = (1.0 - mu) * *spec.fixed_sum;
      }
      rows.push_back(r);
    }
  }

  const auto fill = [&spec](SweepRow& r) {
    try {
      if (spec.family == SweepFamily::Bernoulli) {
        r.variance = r.mu * (1.0 - r.mu);
        r.simple_bound = 0.25;
        r.kearns_saul = kearns_saul_proxy(r.mu);
        r.sigma2_opt = bernoulli_optimal_proxy(BernoulliParams(r.mu));
        return;
      }
      const BetaParams p(r.alpha, r.beta);
      if (spec.family == SweepFamily::BetaGrid) r.mu = p.mean();
      r.variance = variance(p);
      r.simple_bound = simple_upper_bound(p);
      r.kearns_saul = kearns_saul_proxy(r.mu);
      r.sigma2_opt = optimal_proxy_variance(p).sigma2_opt;
    } catch (const std::exception& e) {
      r.sigma2_opt.reset();
      r.error = e.what();
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads == 0 ? hw : threads, rows.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&rows, &fill, w, workers] {
      for (std::size_t i = w; i < rows.size(); i += workers) fill(rows[i]);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const bool grid = spec.family == SweepFamily::BetaGrid;
  os << (grid ? "alpha,beta," : "") << "mu,variance,sigma2_opt,simple_bound,kearns_saul\n";
  for (const auto& r : rows) {
    if (grid) os << fmt17(r.alpha) << ',' << fmt17(r.beta) << ',';
    os << fmt17(r.mu) << ',' << fmt17(r.variance) << ','
       << (r.sigma2_opt ? fmt17(*r.sigma2_opt) : std::string()) << ',' << fmt17(r.simple_bound)
       << ',' << fmt17(r.kearns_saul) << '\n';
  }
}

VerifyReport run_verify(const Distribution& dist, VerifyMode mode, std::uint64_t seed) {
  VerifyReport rep;
  const bool full = mode == VerifyMode::Full;

  if (const auto* b = std::get_if<BetaParams>(&dist)) {
    const ProxyResult r = optimal_proxy_variance(*b);
    rep.append(beta_checks(*b, r, ""));
    rep.append(beta_ode_checks(*b, r));
    rep.append(sign_structure_check(*b));
    if (full) rep.append(chernoff_tail_check(*b, r.sigma2_opt, kChernoffSamples, seed));
    return rep;
  }

  if (const auto* q = std::get_if<BernoulliParams>(&dist)) {
    const double mu = q->mu();
    const ProxyResult r = bernoulli_proxy_result(*q);
    const double ks = kearns_saul_proxy(mu);
    const double rel = std::abs(r.sigma2_opt - ks) / ks;
    rep.add("identity_kearns_saul", rel <= 1e-12, rel, 1e-12);
    const double floor_gap = r.sigma2_opt - mu * (1.0 - mu);
    rep.add("variance_floor", floor_gap >= 0.0, floor_gap, 0.0);
    const double ceil_gap = 0.25 - r.sigma2_opt;
    rep.add("hoeffding_ceiling", ceil_gap >= 0.0, ceil_gap, 0.0);
    const double margin = bernoulli_domination_margin(mu, r.sigma2_opt);
    rep.add("mgf_domination", margin >= -kDominationTol, margin, -kDominationTol);
    const double touch = std::abs(bernoulli_relative_gap(mu, r.sigma2_opt, r.x0));
    rep.add("mgf_touch_at_x0", touch <= 1e-8, touch, 1e-8);
    const std::vector<double> grid = linspace_grid(-10.0, 10.0, 2001);
    const double ode = bernoulli_ode_residual(mu, r.t_opt, grid);
    rep.add("explicit_solution_ode_residual", ode <= kOdeTol, ode, kOdeTol);
    if (mu != 0.5) {
      const auto lim = beta_to_bernoulli_limit(mu, 1e-4);
      rep.add("beta_limit_gap", std::abs(lim.gap) <= 1e-3, std::abs(lim.gap), 1e-3);
    }
    if (full) rep.append(chernoff_tail_check(*q, r.sigma2_opt, kChernoffSamples, seed));
    return rep;
  }

  const auto& d = std::get<DirichletParams>(dist);
  const ProxyResult r = dirichlet_optimal_proxy(d);
  double best = 0.0;
  for (std::size_t i = 0; i < d.dim(); ++i) {
    best = std::max(best, optimal_proxy_variance(BetaParams(d[i], d.alpha_bar() - d[i])).sigma2_opt);
  }
  const double rel = std::abs(best - r.sigma2_opt) / r.sigma2_opt;
  rep.add("reduction_matches_max_marginal", rel <= 1e-12, rel, 1e-12);
  const BetaParams reduced(d.alpha_max(), d.alpha_bar() - d.alpha_max());
  rep.append(beta_checks(reduced, r, "reduced_"));

  if (d.dim() <= 5) {
    // Termwise Pochhammer comparison: valid when all lambda_i share one sign.
    double worst = -INFINITY;
    for (double scale : {-5.0, -1.0, 1.0, 5.0}) {
      std::vector<double> lambda(d.dim());
      for (std::size_t i = 0; i < d.dim(); ++i) {
        lambda[i] = scale * (i % 2 == 0 ? 1.0 : 0.5) / std::sqrt(static_cast<double>(d.dim()));
      }
      double prod = 1.0;
      for (std::size_t i = 0; i < d.dim(); ++i) {
        prod *= kummer_1f1(KummerArgs(d[i], d.alpha_bar(), lambda[i]));
      }
      worst = std::max(worst, dirichlet_mgf_series(d, lambda, 40) - prod);
    }
    rep.add("mgf_product_bound", worst <= 1e-8, worst, 1e-8);
  } else {
    rep.skip("mgf_product_bound");
  }

  if (full) {
    std::vector<double> e(d.dim(), 0.0);
    e[d.argmax()] = 1.0;
    rep.append(chernoff_tail_check(DirectionalDirichlet{d, e}, r.sigma2_opt, kChernoffSamples, seed));

    const std::vector<double> lambdas{-10.0, -5.0, -1.0, 1.0, 5.0, 10.0};
    Engine rng(seed);
    std::exponential_distribution<double> expo;
    for (int k = 0; k < kRandomDirections; ++k) {
      // Uniform point of the simplex.
      std::vector<double> u(d.dim());
      double total = 0.0;
      for (double& ui : u) {
        ui = expo(rng);
        total += ui;
      }
      for (double& ui : u) ui /= total;
      rep.append(directional_mgf_check(d, u, r.sigma2_opt, lambdas, kDirectionalSamples, seed + k + 1),
                 fmt::format("u{} ", k));
    }
  }
  return rep;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal sub-Gaussian proxy variances for Beta, Bernoulli and Dirichlet laws",
               "subgauss"};
  app.require_subcommand(1);

  std::string compute_spec;
  bool as_json = false;
  auto* compute_cmd = app.add_subcommand("compute", "Optimal proxy variance and classical bounds");
  compute_cmd->add_option("spec", compute_spec, "beta:a,b | bernoulli:mu | dirichlet:a1,...,ad")
      ->required();
  compute_cmd->add_flag("--json", as_json, "Emit a JSON object");

  std::string family_name;
  std::optional<double> fixed_sum;
  GridAxis axis;
  bool log_scale = false;
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep written as CSV");
  sweep_cmd->add_option("--family", family_name, "beta-fixed-sum | beta-grid | bernoulli")
      ->required();
  sweep_cmd->add_option("--fixed-sum", fixed_sum, "alpha + beta for beta-fixed-sum");
  sweep_cmd->add_option("--min", axis.min, "Grid minimum")->required();
  sweep_cmd->add_option("--max", axis.max, "Grid maximum")->required();
  sweep_cmd->add_option("--count", axis.count, "Number of grid points")->required();
  sweep_cmd->add_flag("--log", log_scale, "Logarithmic grid spacing");
  sweep_cmd->add_option("--out", out_path, "Output CSV path ('-' for standard output)")
      ->required();

  std::string verify_spec;
  bool full = false;
  bool fast = false;
  std::uint64_t seed = 42;
  bool verify_json = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the oracle checks for one distribution");
  verify_cmd->add_option("spec", verify_spec, "beta:a,b | bernoulli:mu | dirichlet:a1,...,ad")
      ->required();
  auto* full_flag = verify_cmd->add_flag("--full", full, "Include Monte Carlo tail checks");
  verify_cmd->add_flag("--fast", fast, "Deterministic checks only (default)")->excludes(full_flag);
  verify_cmd->add_option("--seed", seed, "Monte Carlo seed");
  verify_cmd->add_flag("--json", verify_json, "Emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (compute_cmd->parsed()) {
      const ComputeOutput res = compute(parse_distribution(compute_spec));
      out << (as_json ? compute_json(res) + "\n" : compute_text(res));
      return kOk;
    }

    if (sweep_cmd->parsed()) {
      SweepSpec spec;
      spec.family = parse_family(family_name);
      spec.fixed_sum = fixed_sum;
      spec.grid = axis;
      spec.grid.log_scale = log_scale;
      const auto rows = run_sweep(spec);
      bool failed = false;
      for (const auto& r : rows) {
        if (!r.sigma2_opt) {
          failed = true;
          err << "warning: alpha=" << r.alpha << " beta=" << r.beta << ": " << r.error << "\n";
        }
      }
      if (out_path == "-") {
        write_csv(out, spec, rows);
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
          err << "error: cannot open " << out_path << " for writing\n";
          return kUsage;
        }
        write_csv(file, spec, rows);
        if (!file) {
          err << "error: write to " << out_path << " failed\n";
          return kUsage;
        }
      }
      return failed ? kNumerical : kOk;
    }

    const VerifyReport rep = run_verify(parse_distribution(verify_spec),
                                        full ? VerifyMode::Full : VerifyMode::Fast, seed);
    out << (verify_json ? rep.to_json() + "\n" : rep.to_table());
    return rep.all_passed() ? kOk : kNumerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace subgauss::cli
