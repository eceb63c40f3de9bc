#include "fcurp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fcurp/approx.hpp"
#include "fcurp/heuristics.hpp"
#include "fcurp/milp.hpp"
#include "fcurp/svg_plot.hpp"

namespace fcurp {

std::vector<Eigen::Vector2d> fixed_depot_sites(double area) {
  const double k = area / 5000.0;
  return {{2500.0 * k, 2500.0 * k},
          {2500.0 * k, 500.0 * k},
          {2500.0 * k, 4500.0 * k},
          {500.0 * k, 2500.0 * k},
          {4500.0 * k, 2500.0 * k}};
}

Metric parse_metric(const std::string& name) {
  if (name == "dubins") return Metric::Dubins;
  if (name == "euclidean") return Metric::Euclidean;
  throw std::invalid_argument("unknown metric '" + name + "'");
}

std::string to_string(Metric metric) {
  return metric == Metric::Dubins ? "dubins" : "euclidean";
}

Generated generate_counted(const GenParams& params) {
  if (params.n_targets < 1 || params.n_depots < 1)
    throw std::invalid_argument("need at least one target and one depot");
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> coord(0.0, params.area);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const auto sites = fixed_depot_sites(params.area);

  for (int draw = 1; draw <= params.max_draws; ++draw) {
    Layout layout;
    layout.metric = params.metric;
    layout.turn_radius = params.metric == Metric::Dubins ? params.turn_radius : 0.0;
    for (int i = 0; i < params.n_targets; ++i) {
      const double x = coord(rng);
      const double y = coord(rng);
      layout.targets.emplace_back(x, y, angle(rng));
    }
    for (int d = 0; d < params.n_depots; ++d) {
      if (d < static_cast<int>(sites.size())) {
        layout.depots.emplace_back(sites[d].x(), sites[d].y(), angle(rng));
      } else {
        const double x = coord(rng);
        const double y = coord(rng);
        layout.depots.emplace_back(x, y, angle(rng));
      }
    }
    Eigen::MatrixXd fuel =
        params.metric == Metric::Dubins
            ? fuel_matrix_from_poses(layout.targets, layout.depots, params.turn_radius)
            : euclidean_fuel_matrix(layout.targets, layout.depots);
    Instance inst(params.n_targets, params.n_depots, 0, std::move(fuel), params.capacity,
                  std::move(layout));
    if (validate(inst).ok() && !derive_constants(inst).degenerate_bound)
      return {std::move(inst), draw};
  }
  throw std::runtime_error("no valid instance within the redraw budget");
}

Instance generate(const GenParams& params) { return generate_counted(params).instance; }

std::optional<Solution> run_solver(const std::string& solver, const Instance& instance,
                                   const SolveOptions& options) {
  if (solver == "exact") {
    ExactResult r = solve_exact(instance, options.exact_limits);
    if (r.status != ExactStatus::Optimal) return std::nullopt;
    return r.solution;
  }
  const PathTable table(instance, derive_constants(instance));
  if (solver == "approx") return approx_solve(instance, table);
  ConstructOptions copt;
  copt.seed = options.seed;
  Solution built = construct(instance, table, copt);
  if (solver == "construct") return built;
  if (solver == "improve") return improve(instance, built, options.k, options.span);
  throw std::invalid_argument("unknown solver '" + solver + "'");
}

nlohmann::json solution_to_json(const Instance& instance, const Solution& solution,
                                bool with_timings) {
  nlohmann::json doc;
  doc["solver"] = solution.solver;
  doc["cost"] = solution.cost();
  doc["refuel_trips"] = solution.refuel_trip_count;
  doc["tour"] = solution.tour.sequence;
  std::vector<std::string> labels;
  for (Vertex v : solution.tour.sequence) labels.push_back(instance.label(v));
  doc["labels"] = labels;
  nlohmann::json stats;
  stats["tour_cost_before_repair"] = solution.stats.tour_cost;
  stats["cover_cost"] = solution.stats.cover_cost;
  stats["cover_rounds"] = solution.stats.cover_rounds;
  stats["trip_costs"] = solution.stats.trip_costs;
  stats["kopt_gain"] = solution.stats.kopt_gain;
  stats["depot_exchange_gain"] = solution.stats.depot_exchange_gain;
  if (with_timings) stats["seconds"] = solution.stats.seconds;
  doc["stats"] = std::move(stats);
  return doc;
}

std::vector<Vertex> tour_from_json(const Instance& instance, const nlohmann::json& doc) {
  std::vector<Vertex> tour;
  if (doc.contains("tour")) return doc.at("tour").get<std::vector<Vertex>>();
  for (const auto& item : doc.at("labels")) {
    const std::string s = item.get<std::string>();
    if (s.size() < 2 || (s[0] != 't' && s[0] != 'd'))
      throw std::runtime_error("bad vertex label '" + s + "'");
    const int idx = std::stoi(s.substr(1));
    tour.push_back(instance.vertex({idx, s[0] == 't' ? VertexKind::Target : VertexKind::Depot}));
  }
  return tour;
}

nlohmann::json verification_to_json(const Instance& instance, const Verification& v) {
  nlohmann::json doc;
  doc["feasible"] = v.feasible;
  doc["cost"] = v.cost;
  doc["fuel_trace"] = v.trace.levels;
  if (v.violation) doc["violation_position"] = *v.violation;
  std::vector<std::string> missing;
  for (Vertex t : v.missing_targets) missing.push_back(instance.label(t));
  doc["missing_targets"] = missing;
  if (!v.reason.empty()) doc["reason"] = v.reason;
  return doc;
}

std::uint64_t suite_instance_seed(std::uint64_t seed, int n_targets, int index) {
  // splitmix64 over the triple
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(n_targets) * 1000003ULL +
                                                    static_cast<std::uint64_t>(index) + 1ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SuiteReport run_suite(const SuiteOptions& options) {
  for (const auto& s : options.solvers)
    if (s != "approx" && s != "construct" && s != "improve" && s != "exact")
      throw std::invalid_argument("unknown solver '" + s + "'");
  SuiteReport report;
  report.seed = options.seed;
  report.solvers = options.solvers;
  if (options.plot_dir) std::filesystem::create_directories(*options.plot_dir);
  if (options.lp_dir) std::filesystem::create_directories(*options.lp_dir);

  for (int size : options.sizes) {
    SizeRow row;
    row.n_targets = size;
    row.instances = options.per_size;
    std::map<std::string, std::vector<double>> qualities, seconds, costs;
    std::vector<double> dex;

    for (int i = 0; i < options.per_size; ++i) {
      GenParams gp = options.base;
      gp.n_targets = size;
      gp.seed = suite_instance_seed(options.seed, size, i);
      const Instance inst = generate(gp);
      const std::string stem = "n" + std::to_string(size) + "_i" + std::to_string(i);

      std::map<std::string, Solution> results;
      const PathTable table(inst, derive_constants(inst));
      for (const std::string& name : options.solvers) {
        std::optional<Solution> sol;
        if (name == "exact") {
          if (size > options.exact_cap) continue;
          ExactResult r = solve_exact(inst, options.solve.exact_limits);
          if (r.status == ExactStatus::Optimal) sol = r.solution;
        } else if (name == "approx") {
          sol = approx_solve(inst, table);
        } else {
          ConstructOptions copt;
          copt.seed = options.solve.seed;
          Solution built = construct(inst, table, copt);
          sol = name == "construct" ? built
                                    : improve(inst, built, options.solve.k, options.solve.span);
        }
        if (!sol) continue;
        const Verification v = verify(inst, sol->tour.sequence);
        if (!v.feasible)
          throw std::runtime_error("solver " + name + " produced an infeasible tour on " + stem +
                                   ": " + v.reason);
        results.emplace(name, std::move(*sol));
      }

      double reference;
      if (auto it = results.find("exact"); it != results.end()) {
        reference = it->second.cost();
        ++row.exact_optimal;
      } else {
        reference = std::numeric_limits<double>::infinity();
        for (const auto& [name, sol] : results) reference = std::min(reference, sol.cost());
      }
      for (const auto& [name, sol] : results) {
        qualities[name].push_back(quality(sol.cost(), reference));
        seconds[name].push_back(sol.stats.seconds);
        costs[name].push_back(sol.cost());
      }
      if (auto it = results.find("improve"); it != results.end())
        dex.push_back(100.0 * it->second.stats.depot_exchange_gain / reference);

      if (options.lp_dir) export_model(build_model(inst), *options.lp_dir / (stem + ".lp"));
      if (options.plot_dir)
        for (const auto& [name, sol] : results)
          plot_svg(inst, sol, *options.plot_dir / (stem + "_" + name + ".svg"));
    }

    for (const std::string& name : options.solvers) {
      SolverSummary s;
      s.solver = name;
      const auto& q = qualities[name];
      s.solved = static_cast<int>(q.size());
      if (!q.empty()) {
        for (double v : q) s.mean_quality += v;
        s.mean_quality /= q.size();
        s.worst_quality = *std::max_element(q.begin(), q.end());
        for (double v : seconds[name]) s.mean_seconds += v;
        s.mean_seconds /= q.size();
        for (double v : costs[name]) s.mean_cost += v;
        s.mean_cost /= q.size();
      }
      row.solvers.push_back(s);
    }
    if (!dex.empty()) {
      for (double v : dex) row.depot_exchange_contribution += v;
      row.depot_exchange_contribution /= dex.size();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

nlohmann::json report_to_json(const SuiteReport& report, bool with_timings) {
  nlohmann::json doc;
  doc["seed"] = report.seed;
  doc["solvers"] = report.solvers;
  nlohmann::json rows = nlohmann::json::array();
  for (const SizeRow& r : report.rows) {
    nlohmann::json row;
    row["targets"] = r.n_targets;
    row["instances"] = r.instances;
    row["exact_optimal"] = r.exact_optimal;
    row["depot_exchange_contribution"] = r.depot_exchange_contribution;
    nlohmann::json solvers = nlohmann::json::object();
    for (const SolverSummary& s : r.solvers) {
      nlohmann::json e;
      e["solved"] = s.solved;
      e["mean_quality"] = s.mean_quality;
      e["worst_quality"] = s.worst_quality;
      e["mean_cost"] = s.mean_cost;
      if (with_timings) e["mean_seconds"] = s.mean_seconds;
      solvers[s.solver] = std::move(e);
    }
    row["solvers"] = std::move(solvers);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

std::string report_table(const SuiteReport& report, bool with_timings) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-6s %-10s %6s %10s %10s %12s", "|T|", "solver", "solved",
                "mean_q%", "worst_q%", "mean_cost");
  os << buf;
  if (with_timings) os << "   mean_s";
  os << '\n';
  for (const SizeRow& r : report.rows) {
    for (const SolverSummary& s : r.solvers) {
      std::snprintf(buf, sizeof buf, "%-6d %-10s %6d %10.3f %10.3f %12.2f", r.n_targets,
                    s.solver.c_str(), s.solved, s.mean_quality, s.worst_quality, s.mean_cost);
      os << buf;
      if (with_timings) {
        std::snprintf(buf, sizeof buf, " %8.4f", s.mean_seconds);
        os << buf;
      }
      os << '\n';
    }
    std::snprintf(buf, sizeof buf, "%-6d depot exchange contribution %.3f%%  (exact optimal %d/%d)\n",
                  r.n_targets, r.depot_exchange_contribution, r.exact_optimal, r.instances);
    os << buf;
  }
  return os.str();
}

}  // namespace fcurp
