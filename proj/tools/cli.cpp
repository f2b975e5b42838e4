#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "csv.hpp"
#include "dpinv/dirichlet_process.hpp"
#include "dpinv/error.hpp"
#include "dpinv/inference.hpp"
#include "dpinv/verify.hpp"
#include "json.hpp"

namespace dpinv::cli {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

// uniform:<lo>,<hi> or gaussian:<mu>,<sigma>
BaseCDF parse_base(const std::string& spec) {
  const auto colon = spec.find(':');
  const auto comma = spec.find(',', colon == std::string::npos ? 0 : colon);
  if (colon == std::string::npos || comma == std::string::npos) {
    throw UsageError("base must be uniform:<lo>,<hi> or gaussian:<mu>,<sigma>");
  }
  const std::string kind = spec.substr(0, colon);
  const double a = parse_double(std::string_view(spec).substr(colon + 1, comma - colon - 1));
  const double b = parse_double(std::string_view(spec).substr(comma + 1));
  if (kind == "uniform") return BaseCDF::uniform(a, b);
  if (kind == "gaussian") return BaseCDF::gaussian(a, b);
  throw UsageError("unknown base '" + kind + "'");
}

json base_to_json(const BaseCDF& base) {
  return std::visit(
      [](const auto& b) -> json {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, UniformBase>) {
          return {{"kind", "uniform"}, {"lo", b.lo}, {"hi", b.hi}};
        } else if constexpr (std::is_same_v<T, GaussianBase>) {
          return {{"kind", "gaussian"}, {"location", b.location}, {"scale", b.scale}};
        } else if constexpr (std::is_same_v<T, EmpiricalBase>) {
          return {{"kind", "empirical"}, {"atoms", b.cdf.size()}};
        } else {
          json comps = json::array();
          for (const auto& c : b.components) comps.push_back(base_to_json(c));
          return {{"kind", "mixture"},
                  {"weights", std::vector<double>(b.weights.begin(), b.weights.end())},
                  {"components", comps}};
        }
      },
      base.variant());
}

json interval_to_json(const Interval& i) { return {{"lo", i.lo}, {"hi", i.hi}, {"level", i.level}}; }

json arm_to_json(const ArmSummary& a) {
  return {{"observations", a.observations},
          {"point_estimate", a.point_estimate},
          {"credible_interval", interval_to_json(a.credible_interval)}};
}

void write_document(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw UsageError("failed writing " + path);
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

struct VerifyOptions {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  bool negative_control = false;
  bool timing = false;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  verify::CheckConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw UsageError("cannot open " + o.config_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidConfig, e.what());
    }
    cfg = verify::config_from_json(j);
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.negative_control) cfg.falsify = true;
  cfg.validate();

  const auto report = verify::run_all(cfg);
  write_document(o.out_path, report.to_json(o.timing));
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.statistic_name << "="
        << fmt(c.worst_statistic) << '\n';
    err << "  " << c.name << " took " << fmt(c.wall_seconds) << " s\n";
  }
  out << (report.overall_pass ? "overall: PASS" : "overall: FAIL") << '\n';
  return report.overall_pass ? kExitOk : kExitCheckFailed;
}

struct AnalyzeOptions {
  std::string a_path;
  std::string b_path;
  std::string data_path;
  std::string functional = "mean";
  std::size_t draws = 10000;
  double level = 0.95;
  std::uint64_t seed = verify::kDefaultSeed;
  std::string out_path;
  std::optional<double> prior_eps;
  std::string prior_base;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
  const bool two_files = !o.a_path.empty() || !o.b_path.empty();
  if (two_files == !o.data_path.empty()) {
    throw UsageError("give either --a and --b, or --data with a value,arm CSV");
  }
  if (two_files && (o.a_path.empty() || o.b_path.empty())) throw UsageError("--a and --b go together");
  if (o.prior_eps.has_value() != !o.prior_base.empty()) {
    throw UsageError("--prior-eps and --prior-base go together");
  }
  TwoArmData data = two_files ? TwoArmData{read_value_column(o.a_path), read_value_column(o.b_path)}
                              : read_two_arm(o.data_path);
  const Functional f = Functional::parse(o.functional);
  std::optional<PriorOverride> prior;
  if (o.prior_eps) prior = PriorOverride{*o.prior_eps, parse_base(o.prior_base)};

  const PosteriorSummary s = analyze_two_arm(data, f, o.draws, o.level, o.seed, prior);
  const json doc = {{"schema_version", kSchemaVersion},
                    {"kind", "posterior_summary"},
                    {"contrast", "treatment - control"},
                    {"functional", s.functional},
                    {"draws_used", s.draws_used},
                    {"seed", s.seed},
                    {"prior_concentration", s.prior_concentration},
                    {"point_estimate", s.point_estimate},
                    {"credible_interval", interval_to_json(s.credible_interval)},
                    {"control", arm_to_json(s.control)},
                    {"treatment", arm_to_json(s.treatment)}};
  if (!o.out_path.empty()) write_document(o.out_path, doc);
  out << s.functional << " difference (B - A): " << fmt(s.point_estimate) << "  "
      << fmt(100.0 * o.level) << "% interval [" << fmt(s.credible_interval.lo) << ", "
      << fmt(s.credible_interval.hi) << "]  draws=" << s.draws_used << '\n';
  return kExitOk;
}

struct SampleOptions {
  std::string data_path;
  std::string base;
  std::optional<double> alpha;
  std::size_t draws = 10;
  std::uint64_t seed = verify::kDefaultSeed;
  double truncation_tol = kDefaultTruncationTol;
  std::string out_path;
};

int cmd_sample(const SampleOptions& o, std::ostream& out) {
  if (o.data_path.empty() == o.base.empty()) throw UsageError("give exactly one of --data and --base");
  json draws = json::array();
  json header;
  auto push = [&](const DiscreteCDFDraw& d) {
    draws.push_back({{"atoms", d.atoms}, {"weights", d.weights}, {"truncation_mass", d.truncation_mass}});
  };
  if (!o.data_path.empty()) {
    const auto data = read_value_column(o.data_path);
    const EmpiricalCDF ecdf = empirical_cdf(data);
    const double alpha = o.alpha.value_or(static_cast<double>(data.size()));
    header = {{"alpha", alpha}, {"base", {{"kind", "empirical"}, {"observations", data.size()}}}};
    if (!o.alpha) {
      for (std::size_t i = 0; i < o.draws; ++i) push(bayesian_bootstrap_draw(ecdf, data.size(), o.seed, i));
    } else {
      const DPParams params(alpha, BaseCDF::empirical(ecdf));
      for (std::size_t i = 0; i < o.draws; ++i) push(sample_process(params, o.truncation_tol, o.seed, i));
    }
  } else {
    if (!o.alpha) throw UsageError("--base requires --alpha");
    const DPParams params(*o.alpha, parse_base(o.base));
    header = {{"alpha", *o.alpha}, {"base", base_to_json(params.base)}, {"truncation_tol", o.truncation_tol}};
    const auto batch = sample_stick_breaking_batch(params, o.truncation_tol, o.seed, o.draws);
    for (const auto& d : batch) push(d);
  }
  json doc = {{"schema_version", kSchemaVersion}, {"kind", "dp_draws"}, {"seed", o.seed}};
  doc.update(header);
  doc["draws"] = std::move(draws);
  write_document(o.out_path, doc);
  out << "wrote " << o.draws << " draws to " << o.out_path << '\n';
  return kExitOk;
}

struct CompareOptions {
  std::string data_path;
  std::string functional = "mean";
  std::size_t draws = 5000;
  std::uint64_t seed = verify::kDefaultSeed;
  double threshold = kDefaultEquivalenceThreshold;
  std::string out_path;
};

int cmd_bootstrap_compare(const CompareOptions& o, std::ostream& out) {
  const auto data = read_value_column(o.data_path);
  const auto eq = bootstrap_equivalence(data, Functional::parse(o.functional), o.draws, o.seed, o.threshold);
  if (!o.out_path.empty()) {
    write_document(o.out_path, {{"schema_version", kSchemaVersion},
                                {"kind", "bootstrap_comparison"},
                                {"functional", o.functional},
                                {"draws", eq.draws},
                                {"seed", o.seed},
                                {"ks_distance", eq.ks_distance},
                                {"threshold", eq.threshold},
                                {"pass", eq.pass}});
  }
  out << "ks_distance=" << fmt(eq.ks_distance) << " threshold=" << fmt(eq.threshold) << ' '
      << (eq.pass ? "PASS" : "FAIL") << '\n';
  return eq.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant Dirichlet and Dirichlet-process priors: verification and posterior inference"};
  app.require_subcommand(1, 1);

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariance theorem checks and write a report");
  verify_cmd->add_option("--config", vo.config_path, "JSON check configuration");
  verify_cmd->add_option("--out", vo.out_path, "Report path")->required();
  verify_cmd->add_option("--seed", vo.seed, "Override the configured seed");
  verify_cmd->add_flag("--negative-control", vo.negative_control,
                       "Run the falsified variant of every check (must fail)");
  verify_cmd->add_flag("--timing", vo.timing, "Include wall-clock timings in the report");

  AnalyzeOptions ao;
  auto* analyze_cmd = app.add_subcommand("analyze", "Two-arm posterior analysis under DP(n, F_n)");
  analyze_cmd->add_option("--a", ao.a_path, "Control arm CSV (column 'value')");
  analyze_cmd->add_option("--b", ao.b_path, "Treatment arm CSV (column 'value')");
  analyze_cmd->add_option("--data", ao.data_path, "Single CSV with columns value,arm (arm A or B)");
  analyze_cmd->add_option("--functional", ao.functional, "mean | quantile:<q> | cdf:<t>");
  analyze_cmd->add_option("--draws", ao.draws, "Posterior draws per arm");
  analyze_cmd->add_option("--level", ao.level, "Credible level");
  analyze_cmd->add_option("--seed", ao.seed, "Random seed");
  analyze_cmd->add_option("--out", ao.out_path, "Summary path");
  analyze_cmd->add_option("--prior-eps", ao.prior_eps, "Proper prior concentration eps (optional)");
  analyze_cmd->add_option("--prior-base", ao.prior_base, "Prior base for --prior-eps");

  SampleOptions so;
  auto* sample_cmd = app.add_subcommand("sample", "Draw realizations of a Dirichlet process");
  auto* data_opt = sample_cmd->add_option("--data", so.data_path, "CSV with column 'value'");
  auto* base_opt = sample_cmd->add_option("--base", so.base, "uniform:<lo>,<hi> | gaussian:<mu>,<sigma>");
  data_opt->excludes(base_opt);
  sample_cmd->add_option("--alpha", so.alpha, "Concentration (defaults to n with --data)");
  sample_cmd->add_option("--draws", so.draws, "Number of draws");
  sample_cmd->add_option("--seed", so.seed, "Random seed");
  sample_cmd->add_option("--tol", so.truncation_tol, "Stick-breaking truncation tolerance");
  sample_cmd->add_option("--out", so.out_path, "Output path")->required();

  CompareOptions co;
  auto* compare_cmd =
      app.add_subcommand("bootstrap-compare", "KS distance between frequentist and Bayesian bootstrap");
  compare_cmd->add_option("--data", co.data_path, "CSV with column 'value'")->required();
  compare_cmd->add_option("--functional", co.functional, "mean | quantile:<q> | cdf:<t>");
  compare_cmd->add_option("--draws", co.draws, "Draws per method");
  compare_cmd->add_option("--seed", co.seed, "Random seed");
  compare_cmd->add_option("--threshold", co.threshold, "Pass threshold on the KS distance");
  compare_cmd->add_option("--out", co.out_path, "Optional JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(vo, out, err);
    if (analyze_cmd->parsed()) return cmd_analyze(ao, out);
    if (sample_cmd->parsed()) return cmd_sample(so, out);
    if (compare_cmd->parsed()) return cmd_bootstrap_compare(co, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dpinv::cli
