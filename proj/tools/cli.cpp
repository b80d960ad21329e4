#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qspf/fpi.hpp"
#include "qspf/half_cholesky.hpp"
#include "qspf/io.hpp"
#include "qspf/targets.hpp"

namespace qspf::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kCsvSchema = "# schema=1";
constexpr const char* kCsvHeader = "method,d,eta,wall_ms,residual,iterations,seed,grid_size";
constexpr int kRhwMaxDegree = 512;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TargetArgs {
  std::string kind = "random";
  int degree = -1;
  double inf_norm = 0.5;
  std::uint64_t seed = 0;
  double tau = -1.0;
  double scale = 0.999;
  double eps0 = 1e-15;
  std::string input;
};

void add_target_options(CLI::App* app, TargetArgs& t)
{
  app->add_option("--target", t.kind, "Target family")
      ->check(CLI::IsMember({"random", "hamsim", "file"}))
      ->capture_default_str();
  app->add_option("--degree", t.degree, "Half degree d of a random target");
  app->add_option("--inf-norm", t.inf_norm, "Sup norm of a random target")->capture_default_str();
  app->add_option("--seed", t.seed, "Seed of a random target")->capture_default_str();
  app->add_option("--tau", t.tau, "Simulation time of a hamsim target");
  app->add_option("--scale", t.scale, "Prefactor of a hamsim target")->capture_default_str();
  app->add_option("--eps0", t.eps0, "Truncation accuracy of a hamsim target")->capture_default_str();
  app->add_option("--input", t.input, "Target JSON file");
}

ChebTarget build_target(const TargetArgs& t)
{
  if (t.kind == "random") {
    if (t.degree < 0) throw UsageError("--target random requires --degree");
    if (!(t.inf_norm > 0.0 && t.inf_norm < 1.0)) throw UsageError("--inf-norm must lie in (0, 1)");
    return random_target(t.degree, t.inf_norm, t.seed);
  }
  if (t.kind == "hamsim") {
    if (t.tau < 0.0) throw UsageError("--target hamsim requires a nonnegative --tau");
    HamSimSpec spec{t.tau, t.scale, t.eps0};
    try {
      spec.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return hamsim_target(spec);
  }
  if (t.input.empty()) throw UsageError("--target file requires --input");
  return target_from_json(read_json_file(t.input));
}

json describe_target(const TargetArgs& t)
{
  if (t.kind == "random") return {{"kind", "random"}, {"degree", t.degree}, {"inf_norm", t.inf_norm}, {"seed", t.seed}};
  if (t.kind == "hamsim") return {{"kind", "hamsim"}, {"tau", t.tau}, {"scale", t.scale}, {"eps0", t.eps0}};
  return {{"kind", "file"}, {"input", t.input}};
}

enum class Method { hc, ffpi, fpi_direct, rhw_oracle };

Method parse_method(const std::string& s)
{
  if (s == "hc") return Method::hc;
  if (s == "ffpi") return Method::ffpi;
  if (s == "fpi_direct") return Method::fpi_direct;
  if (s == "rhw_oracle") return Method::rhw_oracle;
  throw UsageError("unknown method '" + s + "' (expected hc, ffpi, fpi_direct or rhw_oracle)");
}

struct SolveOptions {
  double tol = 1e-12;
  std::optional<double> eta;
  int max_iter = 500;
  Eigen::Index max_grid = Eigen::Index(1) << 24;
};

struct Outcome {
  PhaseFactors psi;
  int iterations = 0;
  double wall_ms = 0.0;
  Eigen::Index grid_size = 0;
  double eta = 0.0;
  std::vector<std::string> warnings;
};

double measured_eta(const ChebTarget& t, const SolveOptions& opt)
{
  return opt.eta ? *opt.eta : 1.0 - inf_norm(t);
}

WeissConfig weiss_config(const ChebTarget& t, const SolveOptions& opt)
{
  WeissConfig cfg;
  cfg.eta = measured_eta(t, opt);
  if (!(cfg.eta > 0.0)) throw NormViolation("target sup norm is not below 1");
  cfg.eps = opt.tol;
  cfg.max_grid = opt.max_grid;
  return cfg;
}

Outcome run_method(Method m, const ChebTarget& t, const SolveOptions& opt)
{
  Outcome out;
  out.eta = measured_eta(t, opt);
  const auto start = Clock::now();
  switch (m) {
    case Method::hc: {
      HalfCholResult r = hc_phase_factors(t, weiss_config(t, opt));
      out.psi = std::move(r.phases);
      out.grid_size = r.weiss->grid_size;
      break;
    }
    case Method::rhw_oracle: {
      if (t.degree_half() > kRhwMaxDegree)
        throw UsageError("rhw_oracle is a dense reference; d must be at most " + std::to_string(kRhwMaxDegree));
      const WeissResult w = weiss(t, weiss_config(t, opt));
      const int d = t.degree_half();
      out.psi.reduced.resize(d + 1);
      for (int k = 0; k <= d; ++k) out.psi.reduced(k) = rhw_reference_phase(w.c, k);
      out.grid_size = w.grid_size;
      break;
    }
    case Method::ffpi:
    case Method::fpi_direct: {
      FpiConfig cfg;
      cfg.tol = opt.tol;
      cfg.max_iter = opt.max_iter;
      cfg.evaluator = m == Method::ffpi ? Evaluator::fast : Evaluator::direct;
      SolveReport r = fpi_solve(t, cfg);
      out.psi = std::move(r.psi);
      out.iterations = r.iterations;
      out.warnings = std::move(r.warnings);
      break;
    }
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return out;
}

/// ||F(Psi) - f_hat||_inf with the direct evaluator; shorter vectors are zero-padded.
double direct_residual(const PhaseFactors& psi, const ChebTarget& t)
{
  const Eigen::VectorXd q = qsp_map_F(psi, Evaluator::direct);
  const Eigen::Index n = std::max(q.size(), t.coeffs.size());
  Eigen::VectorXd diff = Eigen::VectorXd::Zero(n);
  diff.head(q.size()) += q;
  diff.head(t.coeffs.size()) -= t.coeffs;
  return diff.lpNorm<Eigen::Infinity>();
}

std::string error_kind(const std::exception& e)
{
#define QSPF_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T
  QSPF_KIND(DivergenceError);
  QSPF_KIND(MaxIterReached);
  QSPF_KIND(NormViolation);
  QSPF_KIND(GridExhausted);
  QSPF_KIND(SingularSystem);
  QSPF_KIND(NotImaginary);
  QSPF_KIND(BreakdownError);
  QSPF_KIND(DomainError);
  QSPF_KIND(UnsupportedParity);
  QSPF_KIND(AliasError);
  QSPF_KIND(InvalidArgument);
#undef QSPF_KIND
  return "Error";
}

json error_json(const std::exception& e)
{
  json j{{"error", error_kind(e)}, {"message", e.what()}};
  if (const auto* fe = dynamic_cast<const FpiError*>(&e)) {
    const SolveReport& r = fe->report();
    j["iterations"] = r.iterations;
    j["warnings"] = r.warnings;
    if (!r.residual_history.empty()) j["last_residual"] = r.residual_history.back();
  }
  return j;
}

void emit_json(const json& j, const std::string& path, std::ostream& out)
{
  if (path.empty())
    out << j.dump(2) << '\n';
  else
    write_json_file(path, j);
}

std::string fmt_double(double v)
{
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// ---------------------------------------------------------------------------

struct SolveCmd {
  TargetArgs target;
  SolveOptions opt;
  std::string method;
  std::string output;
  double eta = -1.0;
};

int cmd_solve(SolveCmd& c, std::ostream& out, std::ostream& err)
{
  const Method m = parse_method(c.method);
  if (c.eta > 0.0) c.opt.eta = c.eta;
  const ChebTarget t = build_target(c.target);
  try {
    Outcome o = run_method(m, t, c.opt);
    const double residual = direct_residual(o.psi, t);
    if (o.warnings.empty() && t.one_norm() >= kFpiOneNormBound && m != Method::hc && m != Method::rhw_oracle)
      o.warnings.push_back("||f_hat||_1 outside the guaranteed convergence region");
    const bool ok = residual <= c.opt.tol;
    if (!ok) o.warnings.push_back("direct-evaluator residual " + fmt_double(residual) + " exceeds tol");
    json meta{{"degree_half", t.degree_half()}, {"eta", o.eta},       {"grid_size", o.grid_size},
              {"tol", c.opt.tol},              {"target", describe_target(c.target)}};
    json j = phases_to_json(o.psi, meta);
    j["residual"] = residual;
    j["iterations"] = o.iterations;
    j["wall_ms"] = o.wall_ms;
    j["method"] = c.method;
    j["warnings"] = o.warnings;
    emit_json(j, c.output, out);
    return ok ? 0 : 1;
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return 1;
  }
}

struct VerifyCmd {
  TargetArgs target;
  std::string phases;
  double tol = 1e-12;
};

int cmd_verify(const VerifyCmd& c, std::ostream& out, std::ostream& err)
{
  const ChebTarget t = build_target(c.target);
  try {
    const PhaseFactors psi = phases_from_json(read_json_file(c.phases));
    const double residual = direct_residual(psi, t);
    const bool ok = residual <= c.tol;
    out << json{{"residual", residual}, {"tol", c.tol}, {"ok", ok}}.dump() << '\n';
    return ok ? 0 : 1;
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return 1;
  }
}

struct BenchCmd {
  TargetArgs target;
  SolveOptions opt;
  std::vector<std::string> methods;
  std::vector<int> degrees;
  std::vector<double> taus;
  std::string output;
  bool force = false;
  bool append = false;
  bool keep_going = false;
};

struct BenchRecord {
  std::string method;
  int d = 0;
  double eta = 0.0;
  double wall_ms = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  Eigen::Index grid_size = 0;
};

std::string csv_row(const BenchRecord& r)
{
  std::ostringstream s;
  s << r.method << ',' << r.d << ',' << fmt_double(r.eta) << ',' << fmt_double(r.wall_ms) << ','
    << fmt_double(r.residual) << ',' << r.iterations << ',' << r.seed << ',' << r.grid_size;
  return s.str();
}

// Warmup, then the median of three timed runs.
BenchRecord bench_cell(Method m, const std::string& name, const ChebTarget& t, const BenchCmd& c)
{
  Outcome warm = run_method(m, t, c.opt);
  std::vector<double> times;
  Outcome last;
  for (int rep = 0; rep < 3; ++rep) {
    last = run_method(m, t, c.opt);
    times.push_back(last.wall_ms);
  }
  std::sort(times.begin(), times.end());
  BenchRecord r;
  r.method = name;
  r.d = t.degree_half();
  r.eta = last.eta;
  r.wall_ms = std::max(times[1], 1e-6);
  r.residual = direct_residual(last.psi, t);
  r.iterations = last.iterations;
  r.seed = c.target.kind == "random" ? c.target.seed : 0;
  r.grid_size = last.grid_size;
  return r;
}

int cmd_bench(BenchCmd& c, std::ostream& out, std::ostream& err)
{
  if (c.methods.empty()) throw UsageError("--methods must name at least one method");
  std::vector<Method> methods;
  for (const auto& s : c.methods) methods.push_back(parse_method(s));

  std::vector<TargetArgs> cells;
  if (c.target.kind == "random") {
    if (c.degrees.empty()) throw UsageError("--target random requires --degrees");
    for (int d : c.degrees) {
      TargetArgs t = c.target;
      t.degree = d;
      cells.push_back(t);
    }
  } else if (c.target.kind == "hamsim") {
    if (c.taus.empty()) throw UsageError("--target hamsim requires --taus");
    for (double tau : c.taus) {
      TargetArgs t = c.target;
      t.tau = tau;
      cells.push_back(t);
    }
  } else {
    cells.push_back(c.target);
  }

  std::ofstream file;
  std::ostream* sink = &out;
  bool need_header = true;
  if (!c.output.empty()) {
    const bool exists = std::filesystem::exists(c.output);
    if (exists && !c.force && !c.append)
      throw UsageError(c.output + " exists; pass --force to overwrite or --append to add rows");
    if (exists && c.append && !c.force) {
      std::ifstream in(c.output);
      std::string schema, header;
      std::getline(in, schema);
      std::getline(in, header);
      if (schema != kCsvSchema || header != kCsvHeader)
        throw UsageError(c.output + " does not carry the schema=1 benchmark header");
      need_header = false;
      file.open(c.output, std::ios::app);
    } else {
      file.open(c.output, std::ios::trunc);
    }
    if (!file) throw UsageError("cannot open " + c.output);
    sink = &file;
  }
  if (need_header) *sink << kCsvSchema << '\n' << kCsvHeader << '\n';

  int failures = 0;
  for (const TargetArgs& cell : cells) {
    const ChebTarget t = build_target(cell);
    for (std::size_t i = 0; i < methods.size(); ++i) {
      try {
        *sink << csv_row(bench_cell(methods[i], c.methods[i], t, c)) << '\n' << std::flush;
      } catch (const Error& e) {
        ++failures;
        json j = error_json(e);
        j["method"] = c.methods[i];
        j["d"] = t.degree_half();
        err << j.dump() << '\n';
        if (!c.keep_going) return 1;
      }
    }
  }
  return 0;
}

struct TargetCmd {
  TargetArgs target;
  std::string output;
};

int cmd_target(const TargetCmd& c, std::ostream& out)
{
  emit_json(target_to_json(build_target(c.target)), c.output, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"QSP phase factors for even target polynomials", "qspf"};
  app.require_subcommand(1);

  SolveCmd solve;
  auto* s = app.add_subcommand("solve", "Compute phase factors and certify them with the direct evaluator");
  add_target_options(s, solve.target);
  s->add_option("--method", solve.method, "hc, ffpi, fpi_direct or rhw_oracle")->required();
  s->add_option("--tol", solve.opt.tol, "Residual threshold")->capture_default_str();
  s->add_option("--eta", solve.eta, "Override 1 - ||f||_inf (default: measured)");
  s->add_option("--max-iter", solve.opt.max_iter, "Iteration cap for fixed-point methods")->capture_default_str();
  s->add_option("--max-grid", solve.opt.max_grid, "Largest Weiss grid")->capture_default_str();
  s->add_option("--output", solve.output, "Write the result JSON here instead of stdout");

  VerifyCmd verify;
  auto* v = app.add_subcommand("verify", "Recompute ||F(Psi) - f_hat||_inf with the direct evaluator");
  add_target_options(v, verify.target);
  v->add_option("--phases", verify.phases, "Phases JSON")->required();
  v->add_option("--tol", verify.tol, "Pass threshold")->capture_default_str();

  BenchCmd bench;
  auto* b = app.add_subcommand("bench", "Time methods over a grid of targets and write CSV rows");
  add_target_options(b, bench.target);
  b->add_option("--methods", bench.methods, "Comma-separated methods")->delimiter(',')->required()->expected(0, -1);
  b->add_option("--degrees", bench.degrees, "Comma-separated half degrees (random targets)")->delimiter(',');
  b->add_option("--taus", bench.taus, "Comma-separated simulation times (hamsim targets)")->delimiter(',');
  b->add_option("--tol", bench.opt.tol, "Residual threshold")->capture_default_str();
  b->add_option("--max-iter", bench.opt.max_iter, "Iteration cap for fixed-point methods")->capture_default_str();
  b->add_option("--output", bench.output, "CSV file (default: stdout)");
  b->add_flag("--force", bench.force, "Overwrite an existing CSV");
  b->add_flag("--append", bench.append, "Append rows to an existing schema=1 CSV");
  b->add_flag("--keep-going", bench.keep_going, "Skip failing cells instead of stopping");

  TargetCmd target;
  auto* t = app.add_subcommand("target", "Write a target JSON");
  add_target_options(t, target.target);
  t->add_option("--output", target.output, "Write here instead of stdout");

  std::vector<std::string> argv_store{"qspf"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (s->parsed()) return cmd_solve(solve, out, err);
    if (v->parsed()) return cmd_verify(verify, out, err);
    if (b->parsed()) return cmd_bench(bench, out, err);
    return cmd_target(target, out);
  } catch (const UsageError& e) {
    err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return 1;
  }
}

}  // namespace qspf::cli
