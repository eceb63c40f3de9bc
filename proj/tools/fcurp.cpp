// Command-line front end: instance generation, solving, suites, MILP export,
// plotting and tour verification.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fcurp/bench.hpp"
#include "fcurp/instance_io.hpp"
#include "fcurp/milp.hpp"
#include "fcurp/svg_plot.hpp"

namespace {

using namespace fcurp;

constexpr int kExitVerification = 1;
constexpr int kExitValidation = 2;
constexpr int kExitError = 3;

struct ValidationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenFlags {
  GenParams params;
  std::string metric = "dubins";

  void attach(CLI::App* app) {
    app->add_option("--seed", params.seed, "Random seed");
    app->add_option("--targets", params.n_targets, "Number of targets")->check(CLI::PositiveNumber);
    app->add_option("--depots", params.n_depots, "Number of depots")->check(CLI::PositiveNumber);
    app->add_option("--capacity", params.capacity, "Fuel capacity L")->check(CLI::PositiveNumber);
    app->add_option("--radius", params.turn_radius, "Minimum turn radius");
    app->add_option("--area", params.area, "Side of the square area");
    app->add_option("--metric", metric, "dubins or euclidean")
        ->check(CLI::IsMember({"dubins", "euclidean"}));
  }

  GenParams resolved() const {
    GenParams p = params;
    p.metric = parse_metric(metric);
    return p;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(f);
}

// Loads the instance file when given, otherwise generates one from the flags.
Instance obtain_instance(const std::string& path, const GenFlags& gen) {
  if (path.empty()) return generate(gen.resolved());
  Instance inst = load_instance(path);
  const ValidationReport report = validate(inst);
  if (!report.ok()) {
    std::string msg = "instance failed validation:";
    for (const Violation& v : report.violations) msg += "\n  " + v.message;
    throw ValidationFailed(msg);
  }
  return inst;
}

Solution checked_solve(const std::string& solver, const Instance& inst, const SolveOptions& opt) {
  std::optional<Solution> sol = run_solver(solver, inst, opt);
  if (!sol) throw std::runtime_error("exact search stopped at its limits without a proof");
  const Verification v = verify(inst, sol->tour.sequence);
  if (!v.feasible) throw VerificationFailed(solver + " produced an infeasible tour: " + v.reason);
  return *sol;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuel-constrained UAV routing: solvers and benchmark harness"};
  app.require_subcommand(1);

  // generate
  GenFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Generate a random instance as JSON");
  gen_flags.attach(gen);
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // solve
  GenFlags solve_gen;
  std::string solve_instance, solve_solver = "improve", solve_out, solve_svg;
  SolveOptions solve_opt;
  bool solve_timings = false;
  auto* solve = app.add_subcommand("solve", "Solve an instance and verify the tour");
  solve->add_option("instance", solve_instance, "Instance JSON (generated from flags if omitted)");
  solve_gen.attach(solve);
  solve->add_option("--solver", solve_solver, "approx, construct, improve or exact")
      ->check(CLI::IsMember({"approx", "construct", "improve", "exact"}));
  solve->add_option("--k", solve_opt.k, "k-opt depth (2 or 3)")->check(CLI::Range(2, 3));
  solve->add_option("--span", solve_opt.span, "Segment span")->check(CLI::PositiveNumber);
  solve->add_option("--time-limit", solve_opt.exact_limits.max_seconds, "Exact solver limit (s)");
  solve->add_option("--out", solve_out, "Solution JSON (default stdout)");
  solve->add_option("--svg", solve_svg, "Also plot the tour to this SVG file");
  solve->add_flag("--timings", solve_timings, "Include wall-clock runtime");

  // suite
  GenFlags suite_gen;
  std::string suite_sizes = "10,15,20,25", suite_solvers = "approx,construct,improve",
              suite_out, suite_table, suite_plots, suite_lp;
  SuiteOptions suite_opt;
  bool suite_timings = false;
  auto* suite = app.add_subcommand("suite", "Run the benchmark suite");
  suite_gen.attach(suite);
  suite->add_option("--sizes", suite_sizes, "Comma-separated target counts");
  suite->add_option("--count", suite_opt.per_size, "Instances per size")->check(CLI::PositiveNumber);
  suite->add_option("--solver", suite_solvers, "Comma-separated solver names");
  suite->add_option("--exact-cap", suite_opt.exact_cap, "Largest size given to the exact solver");
  suite->add_option("--out", suite_out, "Report JSON (default stdout)");
  suite->add_option("--table", suite_table, "Plain-text table file");
  suite->add_option("--plots", suite_plots, "Directory for SVG plots");
  suite->add_option("--lp", suite_lp, "Directory for LP exports");
  suite->add_flag("--timings", suite_timings, "Include wall-clock runtimes");

  // export-milp
  GenFlags milp_gen;
  std::string milp_instance, milp_out;
  auto* milp = app.add_subcommand("export-milp", "Write the MILP model in CPLEX LP format");
  milp->add_option("instance", milp_instance, "Instance JSON (generated from flags if omitted)");
  milp_gen.attach(milp);
  milp->add_option("--out", milp_out, "LP file (default stdout)");

  // plot
  GenFlags plot_gen;
  std::string plot_instance, plot_solution, plot_out, plot_solver = "approx";
  auto* plot = app.add_subcommand("plot", "Render a tour as SVG");
  plot->add_option("instance", plot_instance, "Instance JSON (generated from flags if omitted)");
  plot->add_option("--tour", plot_solution, "Solution JSON; solved with --solver if omitted");
  plot_gen.attach(plot);
  plot->add_option("--solver", plot_solver, "Solver used when no tour is given")
      ->check(CLI::IsMember({"approx", "construct", "improve", "exact"}));
  plot->add_option("--out", plot_out, "SVG file (default stdout)");

  // verify
  std::string verify_instance, verify_solution, verify_out;
  auto* ver = app.add_subcommand("verify", "Check a tour for fuel feasibility and coverage");
  ver->add_option("instance", verify_instance, "Instance JSON")->required();
  ver->add_option("tour", verify_solution, "Solution JSON with \"tour\" or \"labels\"")->required();
  ver->add_option("--out", verify_out, "Verification JSON (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Generated g = generate_counted(gen_flags.resolved());
      write_text(gen_out, instance_to_json(g.instance).dump(1) + "\n");
    } else if (*solve) {
      const Instance inst = obtain_instance(solve_instance, solve_gen);
      solve_opt.seed = solve_gen.params.seed;
      const Solution sol = checked_solve(solve_solver, inst, solve_opt);
      write_text(solve_out, solution_to_json(inst, sol, solve_timings).dump(1) + "\n");
      if (!solve_svg.empty()) plot_svg(inst, sol, solve_svg);
    } else if (*suite) {
      suite_opt.base = suite_gen.resolved();
      suite_opt.seed = suite_gen.params.seed;
      suite_opt.sizes.clear();
      for (const auto& s : split(suite_sizes)) suite_opt.sizes.push_back(std::stoi(s));
      suite_opt.solvers = split(suite_solvers);
      if (!suite_plots.empty()) suite_opt.plot_dir = suite_plots;
      if (!suite_lp.empty()) suite_opt.lp_dir = suite_lp;
      const SuiteReport report = run_suite(suite_opt);
      write_text(suite_out, report_to_json(report, suite_timings).dump(1) + "\n");
      if (!suite_table.empty()) write_text(suite_table, report_table(report, suite_timings));
    } else if (*milp) {
      const Instance inst = obtain_instance(milp_instance, milp_gen);
      std::ostringstream os;
      write_lp(build_model(inst), os);
      write_text(milp_out, os.str());
    } else if (*plot) {
      const Instance inst = obtain_instance(plot_instance, plot_gen);
      Solution sol;
      if (plot_solution.empty()) {
        SolveOptions opt;
        opt.seed = plot_gen.params.seed;
        sol = checked_solve(plot_solver, inst, opt);
      } else {
        sol.tour = Tour::from_sequence(inst, tour_from_json(inst, read_json(plot_solution)));
        const Verification v = verify(inst, sol.tour.sequence);
        if (!v.feasible) throw VerificationFailed("tour is infeasible: " + v.reason);
        sol.solver = "tour";
      }
      write_text(plot_out, render_svg(inst, sol));
    } else if (*ver) {
      const Instance inst = obtain_instance(verify_instance, GenFlags{});
      const auto tour = tour_from_json(inst, read_json(verify_solution));
      const Verification v = verify(inst, tour);
      write_text(verify_out, verification_to_json(inst, v).dump(1) + "\n");
      if (!v.feasible) return kExitVerification;
    }
  } catch (const ValidationFailed& e) {
    std::cerr << "fcurp: " << e.what() << '\n';
    return kExitValidation;
  } catch (const VerificationFailed& e) {
    std::cerr << "fcurp: " << e.what() << '\n';
    return kExitVerification;
  } catch (const MalformedTour& e) {
    std::cerr << "fcurp: malformed tour: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "fcurp: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
