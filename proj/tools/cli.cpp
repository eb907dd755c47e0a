#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "vector_file.hpp"

#include <spherecdf/deformation.hpp>
#include <spherecdf/empirical.hpp>
#include <spherecdf/montecarlo.hpp>
#include <spherecdf/sampling.hpp>
#include <spherecdf/tail_bounds.hpp>
#include <spherecdf/verify.hpp>

namespace spherecdf::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Raised for flag values that parse but violate an operation's domain.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::monostate, std::string, std::int64_t, std::uint64_t, double, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommandOutput {
  std::string command;
  ordered_json inputs = ordered_json::object();
  Table table;
  // Rendered after the table: a "# k=v,..." trailer in CSV, an object in JSON.
  std::optional<ordered_json> summary;
  std::uint64_t seed = 0;
  int exit_code = kExitOk;
};

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

ordered_json cell_json(const Cell& c) {
  struct Visitor {
    ordered_json operator()(std::monostate) const { return nullptr; }
    ordered_json operator()(const std::string& s) const { return s; }
    ordered_json operator()(std::int64_t v) const { return v; }
    ordered_json operator()(std::uint64_t v) const { return v; }
    ordered_json operator()(double v) const { return v; }
    ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

std::string summary_trailer(const ordered_json& summary) {
  std::string line = "#";
  bool first = true;
  for (const auto& [key, value] : summary.items()) {
    line += first ? " " : ",";
    first = false;
    line += key + "=";
    if (value.is_number_float()) {
      line += format_number(value.get<double>());
    } else if (value.is_string()) {
      line += value.get<std::string>();
    } else {
      line += value.dump();
    }
  }
  return line;
}

void render_csv(const CommandOutput& o, std::ostream& out) {
  const auto& t = o.table;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
  if (o.summary) out << summary_trailer(*o.summary) << '\n';
}

void render_json(const CommandOutput& o, std::ostream& out) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : o.table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[o.table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  ordered_json results = ordered_json::object();
  results["rows"] = std::move(rows);
  if (o.summary) results["summary"] = *o.summary;

  ordered_json doc = ordered_json::object();
  doc["command"] = o.command;
  doc["inputs"] = o.inputs;
  doc["results"] = std::move(results);
  doc["seed"] = o.seed;
  doc["version"] = kVersion;
  out << doc.dump(2) << '\n';
}

void render_human(const CommandOutput& o, std::ostream& out) {
  const auto& t = o.table;
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows) {
    auto& line = text.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i]));
      if (line.back().empty()) line.back() = "-";
      width[i] = std::max(width[i], line.back().size());
    }
  }
  out << o.command << " (seed " << o.seed << ")\n";
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const bool last = i + 1 == cells.size();
      out << (i ? "  " : "") << (last ? cells[i] : fmt::format("{:<{}}", cells[i], width[i]));
    }
    out << '\n';
  };
  emit(t.columns);
  for (const auto& line : text) emit(line);
  if (o.summary) out << summary_trailer(*o.summary).substr(2) << '\n';
}

void render(const CommandOutput& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    render_json(o, out);
  } else if (format == "human") {
    render_human(o, out);
  } else {
    render_csv(o, out);
  }
}

// ---- validation helpers -------------------------------------------------

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void require_n(std::int64_t n) { require(n >= 1, fmt::format("--n must be >= 1 (got {})", n)); }

void require_epsilon(double eps) {
  require(std::isfinite(eps) && eps > 0.0, fmt::format("--epsilon must be > 0 (got {})", eps));
}

void require_t(double t, const char* flag = "--t") {
  require(std::isfinite(t) && t >= 0.0 && t < 1.0,
          fmt::format("{} must lie in [0, 1) (got {})", flag, t));
}

void require_unit_open(double v, const char* flag) {
  require(std::isfinite(v) && v > 0.0 && v < 1.0,
          fmt::format("{} must lie in (0, 1) (got {})", flag, v));
}

// ---- subcommands --------------------------------------------------------

struct BoundEvalArgs {
  std::int64_t n = 0;
  double epsilon = 0.0;
  double t = 0.0;
};

CommandOutput cmd_bound_eval(const BoundEvalArgs& a) {
  require_n(a.n);
  require_epsilon(a.epsilon);
  require_t(a.t);

  CommandOutput o;
  o.command = "bound-eval";
  o.inputs = {{"n", a.n}, {"epsilon", a.epsilon}, {"t", a.t}};
  o.table.columns = {"bound", "n",           "epsilon",     "t",    "threshold",
                     "dkw_term", "gplus_term", "gminus_term", "total"};
  const BoundInputs in(a.n, a.epsilon, DeformationParam(a.t));
  auto add = [&](const char* name, const BoundBreakdown& b) {
    o.table.rows.push_back({std::string(name), a.n, a.epsilon, a.t, b.threshold, b.dkw_term,
                            b.gplus_term, b.gminus_term, b.total});
  };
  add("theorem", theorem_bound(in));
  add("corollary", corollary_bound(in));
  return o;
}

struct BoundOptimizeArgs {
  std::int64_t n = 0;
  double delta = 0.0;
  std::string mode = "exact";
};

CommandOutput cmd_bound_optimize(const BoundOptimizeArgs& a) {
  require_n(a.n);
  require(std::isfinite(a.delta) && a.delta > 0.0 && a.delta <= 1.0,
          fmt::format("--delta must lie in (0, 1] (got {})", a.delta));
  const SplitMode mode = a.mode == "corollary" ? SplitMode::corollary : SplitMode::exact_gamma;

  CommandOutput o;
  o.command = "bound-optimize";
  o.inputs = {{"n", a.n}, {"delta", a.delta}, {"mode", a.mode}};
  o.table.columns = {"mode", "n", "delta", "best_epsilon", "best_t", "best_total", "p_bound"};
  const OptimizedBound r = optimize_split(a.n, a.delta, mode);
  o.table.rows.push_back({a.mode, a.n, r.delta, r.best_epsilon, r.best_t, r.best_total,
                          std::min(1.0, r.best_total)});
  return o;
}

struct GammaArgs {
  double t_min = 0.0;
  double t_max = 0.99;
  int steps = 100;
  int grid_points = kDefaultOracleGrid;
};

CommandOutput cmd_gamma(const GammaArgs& a) {
  require_t(a.t_min, "--t-min");
  require_t(a.t_max, "--t-max");
  require(a.t_min < a.t_max, "--t-min must be below --t-max");
  require(a.steps >= 2, fmt::format("--steps must be >= 2 (got {})", a.steps));
  require(a.grid_points >= 1000,
          fmt::format("--grid-points must be >= 1000 (got {})", a.grid_points));

  CommandOutput o;
  o.command = "gamma";
  o.inputs = {{"t_min", a.t_min}, {"t_max", a.t_max}, {"steps", a.steps},
              {"grid_points", a.grid_points}};
  o.table.columns = {"t",       "gamma",   "gamma_oracle", "half_t",
                     "g_plus",  "g_minus", "g_minus_lb",   "g_plus_lb"};
  const double h = (a.t_max - a.t_min) / (a.steps - 1);
  for (int i = 0; i < a.steps; ++i) {
    // Pin the last point so rounding cannot push it past t_max.
    const double t = i + 1 == a.steps ? a.t_max : a.t_min + i * h;
    const DeformationParam p(t);
    o.table.rows.push_back({t, gamma_closed(p).gamma, gamma_oracle(p, a.grid_points), 0.5 * t,
                            g_plus(t), g_minus(t), t, 0.375 * t});
  }
  return o;
}

struct SimulateArgs {
  std::string kind = "theorem";
  std::int64_t n = 100;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  double epsilon = 0.05;
  double t = 0.1;
  double x = 1.0;
  double confidence = kDefaultConfidence;
  unsigned threads = 0;
};

CommandOutput cmd_simulate(const SimulateArgs& a) {
  require_n(a.n);
  require(a.trials >= kMinWilsonTrials,
          fmt::format("--trials must be >= {} (got {})", kMinWilsonTrials, a.trials));
  require_unit_open(a.confidence, "--confidence");
  const bool uses_eps = a.kind == "theorem" || a.kind == "dkw";
  const bool uses_t = a.kind == "theorem" || a.kind == "lambda";
  const bool uses_x = a.kind == "chisq";
  if (uses_eps) require_epsilon(a.epsilon);
  if (uses_t) require_t(a.t);
  if (uses_x) require(std::isfinite(a.x) && a.x > 0.0, fmt::format("--x must be > 0 (got {})", a.x));

  CommandOutput o;
  o.command = "simulate";
  o.seed = a.seed;
  o.inputs = {{"kind", a.kind}, {"n", a.n}, {"trials", a.trials}, {"seed", a.seed}};
  if (uses_eps) o.inputs["epsilon"] = a.epsilon;
  if (uses_t) o.inputs["t"] = a.t;
  if (uses_x) o.inputs["x"] = a.x;
  o.inputs["confidence"] = a.confidence;
  o.table.columns = {"kind",      "event",     "n",           "trials",      "seed",
                     "epsilon",   "t",         "x",           "event_count", "frequency",
                     "wilson_low", "wilson_high", "bound",    "dominated"};

  const RunOptions opts{a.confidence, a.threads};
  const Cell eps = uses_eps ? Cell{a.epsilon} : Cell{};
  const Cell tc = uses_t ? Cell{a.t} : Cell{};
  const Cell xc = uses_x ? Cell{a.x} : Cell{};
  auto add = [&](const char* event, const MonteCarloReport& r) {
    o.table.rows.push_back({a.kind, std::string(event), a.n, a.trials, a.seed, eps, tc, xc,
                            r.event_count, r.frequency, r.wilson_low, r.wilson_high, r.bound,
                            r.dominated});
    if (!r.dominated) o.exit_code = kExitViolation;
  };

  if (a.kind == "theorem") {
    TrialConfig cfg;
    cfg.n = a.n;
    cfg.trials = a.trials;
    cfg.seed = a.seed;
    cfg.epsilon = a.epsilon;
    cfg.t = DeformationParam(a.t);
    add("ks_exceeds_threshold", run_theorem_trials(cfg, opts));
  } else if (a.kind == "dkw") {
    add("ks_exceeds_epsilon", run_dkw_trials(a.n, a.trials, a.seed, a.epsilon, opts));
  } else if (a.kind == "lambda") {
    const LambdaTrialReport r = run_lambda_trials(a.n, a.trials, a.seed, DeformationParam(a.t), opts);
    add("two_sided", r.two_sided);
    add("above", r.above);
    add("below", r.below);
  } else {
    const ChiSquareTrialReport r = run_chisq_trials(a.n, a.trials, a.seed, a.x, opts);
    add("upper", r.upper);
    add("lower", r.lower);
  }
  return o;
}

struct VerifyArgs {
  std::string scope = "all";
  int grid_steps = 200;
  std::optional<double> tolerance;
};

const char* scope_name(VerifyScope s) {
  switch (s) {
    case VerifyScope::lemmas: return "lemmas";
    case VerifyScope::appendix: return "appendix";
    case VerifyScope::all: return "all";
  }
  return "all";
}

CommandOutput cmd_verify(const VerifyArgs& a) {
  require(a.grid_steps >= 100, fmt::format("--grid-steps must be >= 100 (got {})", a.grid_steps));
  if (a.tolerance) {
    require(std::isfinite(*a.tolerance) && *a.tolerance >= 0.0,
            fmt::format("--tolerance must be >= 0 (got {})", *a.tolerance));
  }
  VerifyScope scope = VerifyScope::all;
  if (a.scope == "lemmas") scope = VerifyScope::lemmas;
  if (a.scope == "appendix") scope = VerifyScope::appendix;

  CommandOutput o;
  o.command = "verify";
  o.inputs = {{"scope", a.scope}, {"grid_steps", a.grid_steps}};
  o.inputs["tolerance"] = a.tolerance ? ordered_json(*a.tolerance) : ordered_json(nullptr);
  o.table.columns = {"check", "scope", "worst_residual", "argmax", "tolerance", "passed"};
  const VerificationReport report = verify_lemmas(a.grid_steps, a.tolerance, scope);
  for (const auto& c : report.checks) {
    o.table.rows.push_back({c.name, std::string(scope_name(c.scope)), c.worst_residual, c.argmax,
                            c.tolerance, c.passed});
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const CheckResult& c) { return !c.passed; });
  o.summary = ordered_json{{"checks", static_cast<std::int64_t>(report.checks.size())},
                           {"failed", static_cast<std::int64_t>(failed)}};
  o.exit_code = report.all_passed() ? kExitOk : kExitViolation;
  return o;
}

struct UniformityArgs {
  std::string input;
  double alpha = 0.05;
  bool no_normalize = false;
};

constexpr double kSphereTolerance = 1e-6;

CommandOutput cmd_test_uniformity(const UniformityArgs& a) {
  require_unit_open(a.alpha, "--alpha");
  VectorFile file;
  try {
    file = read_vector_file(a.input);
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("{}: {}", a.input, e.what()));
  }

  CommandOutput o;
  o.command = "test-uniformity";
  o.inputs = {{"input", a.input}, {"alpha", a.alpha}, {"normalize", !a.no_normalize}};
  o.table.columns = {"row", "n", "norm", "ks_statistic", "p_bound", "reject", "off_sphere"};

  std::int64_t rejected = 0;
  std::vector<double> scaled;
  for (std::size_t r = 0; r < file.rows.size(); ++r) {
    const auto& row = file.rows[r];
    const auto n = static_cast<std::int64_t>(row.size());
    const double norm = euclidean_norm(row);
    if (norm == 0.0) throw UsageError(fmt::format("row {} is the zero vector", r));
    const bool off_sphere = std::abs(norm - 1.0) > kSphereTolerance;
    const double scale = std::sqrt(static_cast<double>(n)) / (off_sphere && !a.no_normalize ? norm : 1.0);
    scaled.resize(row.size());
    std::transform(row.begin(), row.end(), scaled.begin(), [scale](double v) { return scale * v; });
    const double ks = ks_to_normal(build_ecdf(scaled)).statistic;
    const double p = ks > 0.0 ? p_value_bound(n, std::min(ks, 1.0)) : 1.0;
    const bool reject = p < a.alpha;
    rejected += reject;
    o.table.rows.push_back({static_cast<std::int64_t>(r), n, norm, ks, p, reject, off_sphere});
  }
  o.summary = ordered_json{{"rows", static_cast<std::int64_t>(file.rows.size())},
                           {"rejected", rejected},
                           {"alpha", a.alpha}};
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concentration bounds for the empirical CDF of a uniform point on the sphere",
               "spherecdf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  std::string format = "csv";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "human"}));
  bool json_alias = false;
  app.add_flag("--json", json_alias, "Shorthand for --format json");

  BoundEvalArgs be;
  auto* sub_be = app.add_subcommand("bound-eval", "Theorem and corollary tail bounds");
  sub_be->add_option("--n", be.n, "Dimension N")->required();
  sub_be->add_option("--epsilon", be.epsilon, "DKW slack epsilon > 0")->required();
  sub_be->add_option("--t", be.t, "Deformation t in [0,1)")->required();

  BoundOptimizeArgs bo;
  auto* sub_bo = app.add_subcommand("bound-optimize", "Best split of a KS threshold delta");
  sub_bo->add_option("--n", bo.n, "Dimension N")->required();
  sub_bo->add_option("--delta", bo.delta, "KS threshold in (0,1]")->required();
  sub_bo->add_option("--mode", bo.mode, "exact or corollary")->capture_default_str()
      ->check(CLI::IsMember({"exact", "corollary"}));

  GammaArgs ga;
  auto* sub_ga = app.add_subcommand("gamma", "Table of the gap function and its bounds");
  sub_ga->add_option("--t-min", ga.t_min, "Smallest t")->capture_default_str();
  sub_ga->add_option("--t-max", ga.t_max, "Largest t")->capture_default_str();
  sub_ga->add_option("--steps", ga.steps, "Number of grid points")->capture_default_str();
  sub_ga->add_option("--grid-points", ga.grid_points, "Oracle grid size")->capture_default_str();

  SimulateArgs si;
  auto* sub_si = app.add_subcommand("simulate", "Monte Carlo check of a tail bound");
  sub_si->add_option("--kind", si.kind, "theorem, dkw, lambda or chisq")->capture_default_str()
      ->check(CLI::IsMember({"theorem", "dkw", "lambda", "chisq"}));
  sub_si->add_option("--n", si.n, "Dimension N")->capture_default_str();
  sub_si->add_option("--trials", si.trials, "Number of trials")->capture_default_str();
  sub_si->add_option("--seed", si.seed, "RNG seed")->capture_default_str();
  sub_si->add_option("--epsilon", si.epsilon, "Epsilon (theorem, dkw)")->capture_default_str();
  sub_si->add_option("--t", si.t, "Deformation t (theorem, lambda)")->capture_default_str();
  sub_si->add_option("--x", si.x, "Chi-square deviation x (chisq)")->capture_default_str();
  sub_si->add_option("--confidence", si.confidence, "Wilson interval level")->capture_default_str();
  sub_si->add_option("--threads", si.threads, "Worker threads, 0 = all cores")->capture_default_str();

  VerifyArgs ve;
  auto* sub_ve = app.add_subcommand("verify", "Grid checks of the analytic lemmas");
  sub_ve->add_option("--scope", ve.scope, "lemmas, appendix or all")->capture_default_str()
      ->check(CLI::IsMember({"lemmas", "appendix", "all"}));
  sub_ve->add_option("--grid-steps", ve.grid_steps, "Grid resolution")->capture_default_str();
  sub_ve->add_option("--tolerance", ve.tolerance, "Override every check's tolerance");

  UniformityArgs un;
  auto* sub_un = app.add_subcommand("test-uniformity", "Conservative sphere-uniformity test");
  sub_un->add_option("--input", un.input, "Vector file, one vector per line")->required();
  sub_un->add_option("--alpha", un.alpha, "Significance level")->capture_default_str();
  sub_un->add_flag("--no-normalize", un.no_normalize,
                   "Use off-sphere rows as given instead of projecting them");

  CLI::App* active = &app;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    for (auto* sub : app.get_subcommands()) active = sub;
    if (json_alias) format = "json";

    CommandOutput o;
    if (sub_be->parsed()) {
      o = cmd_bound_eval(be);
    } else if (sub_bo->parsed()) {
      o = cmd_bound_optimize(bo);
    } else if (sub_ga->parsed()) {
      o = cmd_gamma(ga);
    } else if (sub_si->parsed()) {
      o = cmd_simulate(si);
    } else if (sub_ve->parsed()) {
      o = cmd_verify(ve);
    } else {
      o = cmd_test_uniformity(un);
    }
    render(o, format, out);
    return o.exit_code;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const std::domain_error& e) {
    // Core preconditions the flag checks above did not anticipate.
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  }
}

}  // namespace spherecdf::cli
