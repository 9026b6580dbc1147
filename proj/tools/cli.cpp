#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "pmm/baselines.hpp"
#include "pmm/oracle.hpp"
#include "pmm/pmm.hpp"
#include "pmm/problem_io.hpp"
#include "pmm/report_io.hpp"
#include "pmm/svg_plot.hpp"

namespace pmm::cli {

namespace {

using nlohmann::json;

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level() {
  const char* env = std::getenv("PMM_LOG");
  if (!env) return LogLevel::error;
  const std::string v(env);
  if (v == "debug") return LogLevel::debug;
  if (v == "info") return LogLevel::info;
  return LogLevel::error;
}

class Logger {
 public:
  Logger(std::ostream& err, LogLevel level) : err_(err), level_(level) {}
  void info(const std::string& msg) const {
    if (level_ >= LogLevel::info) err_ << "[info] " << msg << '\n';
  }
  void debug(const std::string& msg) const {
    if (level_ >= LogLevel::debug) err_ << "[debug] " << msg << '\n';
  }
  void error(const std::string& msg) const { err_ << "error: " << msg << '\n'; }

 private:
  std::ostream& err_;
  LogLevel level_;
};

json vec(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct SolveArgs {
  std::string problem;
  double eps0 = 1e-3;
  double eps = 1e-6;
  double alpha = 0.5;
  int max_outer = 100000;
  std::string trace;
  std::vector<double> beta0;
  std::vector<double> x0;
  std::uint64_t seed = 0;
};

struct PngArgs {
  std::string problem;
  double c = 1.0;
  double eps_stop = 1e-3;
  double step = 0.01;
  int max_iters = 1000000;
  std::vector<double> x0;
  std::string trajectory;
  std::uint64_t seed = 0;
};

struct OracleArgs {
  std::string problem;
  int resolution = 100;
  std::string out;
  int threads = 1;
  std::uint64_t seed = 0;
};

struct PlotArgs {
  std::string problem;
  int resolution = 30;
  std::string svg;
  std::vector<std::string> overlays;
  std::uint64_t seed = 0;
};

struct GenerateArgs {
  std::string name;
  int n = 2;
  int d = 2;
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, const Logger& log) {
  const ProblemInstance problem = load_problem(a.problem);
  SolverConfig config;
  config.eps0 = a.eps0;
  config.eps = a.eps;
  config.alpha = a.alpha;
  config.max_outer = a.max_outer;
  config.validate();

  InitialPoint init;
  if (!a.beta0.empty()) init.beta = SimplexPoint(to_vector(a.beta0));
  if (!a.x0.empty()) init.x = to_vector(a.x0);

  const ConstantBundle& c = problem.constants();
  log.info("problem: n=" + std::to_string(problem.n()) + " d=" + std::to_string(problem.d()) +
           " kappa=" + format_double(c.kappa) + " R=" + format_double(c.R_bound) +
           " mu_g=" + format_double(c.mu_g));

  PmmResult result = [&] {
    try {
      return pmm_solve(problem, config, init);
    } catch (const PmmFailure& e) {
      if (!a.trace.empty()) write_file_atomically(a.trace, trace_csv(e.trace(), problem.n(), problem.d()));
      throw;
    }
  }();
  for (const auto& r : result.trace.records) {
    log.debug("k=" + std::to_string(r.k) + " f0=" + format_double(r.f0) + " gap=" + format_double(r.gap) +
              " err=" + format_double(r.err) + " c1=" + format_double(r.c1));
  }
  if (!a.trace.empty()) {
    write_file_atomically(a.trace, trace_csv(result.trace, problem.n(), problem.d()));
  }
  const json line{{"status", to_string(result.status)},
                  {"iterations", result.iterations()},
                  {"x", vec(result.point.x)},
                  {"beta", vec(result.point.beta.weights())},
                  {"f0", problem.f0().value(result.point.x)},
                  {"certificate",
                   {{"certified", result.certificate.certified},
                    {"residual", result.certificate.residual},
                    {"gap", result.certificate.gap},
                    {"err", result.certificate.err}}},
                  {"min_c1", result.min_c1}};
  out << line.dump() << '\n';
  log.info("pmm finished after " + std::to_string(result.iterations()) + " iterations: " +
           to_string(result.status));
  return result.status == SolveStatus::certified ? 0 : 2;
}

int cmd_png(const PngArgs& a, std::ostream& out, const Logger& log) {
  const ProblemInstance problem = load_problem(a.problem);
  if (static_cast<int>(a.x0.size()) != problem.d()) {
    throw InvalidArgument("--x0 needs " + std::to_string(problem.d()) + " values");
  }
  PngConfig config{a.c, a.step, a.eps_stop, a.max_iters};
  config.validate();
  const PngResult result = png_descent(problem.F(), problem.f0(), to_vector(a.x0), config);
  if (!a.trajectory.empty()) {
    write_file_atomically(a.trajectory, png_trajectory_csv(result, problem.F(), problem.f0()));
  }
  const json line{{"status", to_string(result.status)},
                  {"iterations", result.iterations},
                  {"x", vec(result.point)},
                  {"f0", problem.f0().value(result.point)},
                  {"pareto_gap", result.pareto_gap},
                  {"angle", result.angle}};
  out << line.dump() << '\n';
  if (result.status == PngStatus::infeasible) {
    log.error("PNG constraints are infeasible at x = " + vec(result.point).dump() +
              " (objective gradients conflict for c = " + format_double(a.c) + ")");
  }
  log.info("png finished after " + std::to_string(result.iterations) + " steps: " + to_string(result.status));
  return result.status == PngStatus::stationary ? 0 : 2;
}

int cmd_oracle(const OracleArgs& a, std::ostream& out, const Logger& log) {
  const ProblemInstance problem = load_problem(a.problem);
  const std::vector<LatticeValue> values = evaluate_lattice(problem, a.resolution, a.threads);
  if (!a.out.empty()) write_file_atomically(a.out, oracle_csv(values, problem.n()));
  std::size_t best = 0;
  double f_max = values.front().f0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i].f0 < values[best].f0) best = i;
    f_max = std::max(f_max, values[i].f0);
  }
  const json line{{"points", values.size()},
                  {"best_beta", vec(values[best].beta.weights())},
                  {"f_min", values[best].f0},
                  {"f_max", f_max}};
  out << line.dump() << '\n';
  log.info("evaluated " + std::to_string(values.size()) + " lattice points");
  return 0;
}

int cmd_plot(const PlotArgs& a, std::ostream& out, const Logger& log) {
  const ProblemInstance problem = load_problem(a.problem);
  if (problem.d() != 2) {
    throw InvalidArgument("unsupported dimension " + std::to_string(problem.d()) + ": plot needs d = 2");
  }
  std::vector<PlotMarker> markers;
  for (const auto& path : a.overlays) {
    markers.push_back(PlotMarker{std::filesystem::path(path).stem().string(), read_csv_endpoint(path)});
  }
  PlotOptions options;
  options.resolution = a.resolution;
  write_file_atomically(a.svg, render_pareto_svg(problem, options, markers));
  out << json{{"svg", a.svg}, {"markers", markers.size()}}.dump() << '\n';
  log.info("wrote " + a.svg);
  return 0;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out, const Logger& log) {
  const ProblemInstance problem = generate_problem(a.name, a.n, a.d, a.seed);
  write_file_atomically(a.out, problem_to_json(problem).dump(2) + "\n");
  out << json{{"problem", a.out}, {"n", problem.n()}, {"d", problem.d()}}.dump() << '\n';
  log.info("wrote " + a.out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Logger log(err, log_level());
  CLI::App app{"Pareto majorization-minimization: preference optimization over Pareto sets"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Run PMM and certify an approximate preference-stationary point");
  s->add_option("--problem", solve.problem, "Problem JSON file")->required();
  s->add_option("--eps0", solve.eps0, "Stationarity tolerance eps0");
  s->add_option("--eps", solve.eps, "Residual tolerance eps (eps <= eps0^2)");
  s->add_option("--alpha", solve.alpha, "Split between gap and error bound, in (0,1)");
  s->add_option("--max-outer", solve.max_outer, "Outer iteration budget");
  s->add_option("--trace", solve.trace, "Trace CSV output");
  s->add_option("--beta0", solve.beta0, "Initial weights");
  s->add_option("--x0", solve.x0, "Initial point");
  s->add_option("--seed", solve.seed, "Random seed");

  PngArgs png;
  auto* p = app.add_subcommand("png", "Run Pareto navigating gradient descent");
  p->add_option("--problem", png.problem, "Problem JSON file")->required();
  p->add_option("--c", png.c, "Constraint level c");
  p->add_option("--eps-stop", png.eps_stop, "Pareto gap stopping level");
  p->add_option("--step", png.step, "Step size");
  p->add_option("--max-iters", png.max_iters, "Step budget");
  p->add_option("--x0", png.x0, "Starting point")->required();
  p->add_option("--trajectory", png.trajectory, "Trajectory CSV output");
  p->add_option("--seed", png.seed, "Random seed");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Grid search of f0 over the Pareto set");
  o->add_option("--problem", oracle.problem, "Problem JSON file")->required();
  o->add_option("--resolution", oracle.resolution, "Lattice denominator m")->check(CLI::PositiveNumber);
  o->add_option("--out", oracle.out, "Oracle CSV output");
  o->add_option("--threads", oracle.threads, "Worker threads")->check(CLI::PositiveNumber);
  o->add_option("--seed", oracle.seed, "Random seed");

  PlotArgs plot;
  auto* pl = app.add_subcommand("plot", "Render a planar Pareto set as SVG");
  pl->add_option("--problem", plot.problem, "Problem JSON file")->required();
  pl->add_option("--resolution", plot.resolution, "Lattice denominator m")->check(CLI::PositiveNumber);
  pl->add_option("--svg", plot.svg, "SVG output")->required();
  pl->add_option("--overlay", plot.overlays, "Trace or trajectory CSV whose endpoint is marked");
  pl->add_option("--seed", plot.seed, "Random seed");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a built-in problem file");
  g->add_option("--name", gen.name,
                "png, identity, curved, random-shared, random-quadratic or random-logcosh")
      ->required();
  g->add_option("--n", gen.n, "Number of objectives (random instances)");
  g->add_option("--d", gen.d, "Dimension (random instances)");
  g->add_option("--out", gen.out, "Problem JSON output")->required();
  g->add_option("--seed", gen.seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    log.error(e.what());
    return 1;
  }

  try {
    if (*s) return cmd_solve(solve, out, log);
    if (*p) return cmd_png(png, out, log);
    if (*o) return cmd_oracle(oracle, out, log);
    if (*pl) return cmd_plot(plot, out, log);
    if (*g) return cmd_generate(gen, out, log);
  } catch (const std::exception& e) {
    log.error(e.what());
    return 1;
  }
  return 1;
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr); }

}  // namespace pmm::cli
