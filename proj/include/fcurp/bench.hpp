#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fcurp/exact.hpp"
#include "fcurp/instance.hpp"
#include "fcurp/tour.hpp"
#include "fcurp/verify.hpp"

namespace fcurp {

/// Defaults follow the reference experiments: 5000 x 5000 square, five fixed
/// depots, turn radius 100, tank 4500.
struct GenParams {
  int n_targets = 25;
  int n_depots = 5;
  double area = 5000.0;
  double turn_radius = 100.0;
  double capacity = 4500.0;
  std::uint64_t seed = 1;
  Metric metric = Metric::Dubins;
  /// Redraw budget for instances that fail validation or have a >= 1.
  int max_draws = 10000;
};

/// Centre plus the four mid-edge points at 1/10 of the side from the border,
/// scaled to `area`. Beyond five, further depots are drawn uniformly.
std::vector<Eigen::Vector2d> fixed_depot_sites(double area);

struct Generated {
  Instance instance;
  int draws = 1;  // 1 + number of rejected draws
};

/// Deterministic in `params.seed`. Rejected draws continue the same random stream.
Generated generate_counted(const GenParams& params);
Instance generate(const GenParams& params);

Metric parse_metric(const std::string& name);
std::string to_string(Metric metric);

/// Solver names: approx, construct, improve, exact.
struct SolveOptions {
  int k = 3;
  int span = 4;
  std::uint64_t seed = 1;
  ExactLimits exact_limits{};
};

/// Runs one named solver end to end. "exact" returns std::nullopt when the
/// search hits its limits before proving optimality.
std::optional<Solution> run_solver(const std::string& solver, const Instance& instance,
                                   const SolveOptions& options = {});

nlohmann::json solution_to_json(const Instance& instance, const Solution& solution,
                                bool with_timings = false);
/// Reads "tour" (global vertex indices) or "labels" ("t3", "d0", ...).
std::vector<Vertex> tour_from_json(const Instance& instance, const nlohmann::json& doc);
nlohmann::json verification_to_json(const Instance& instance, const Verification& v);

struct SolverSummary {
  std::string solver;
  int solved = 0;
  double mean_quality = 0.0;
  double worst_quality = 0.0;
  double mean_seconds = 0.0;
  double mean_cost = 0.0;
};

struct SizeRow {
  int n_targets = 0;
  int instances = 0;
  int exact_optimal = 0;
  std::vector<SolverSummary> solvers;
  /// Mean of 100 * (depot-exchange gain) / reference cost, improve only.
  double depot_exchange_contribution = 0.0;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<std::string> solvers;
  std::vector<SizeRow> rows;
};

struct SuiteOptions {
  std::vector<int> sizes{10, 15, 20, 25};
  int per_size = 50;
  std::vector<std::string> solvers{"approx", "construct", "improve"};
  std::uint64_t seed = 1;
  GenParams base{};
  /// exact is attempted only when |T| <= exact_cap.
  int exact_cap = 9;
  SolveOptions solve{};
  std::optional<std::filesystem::path> plot_dir;
  std::optional<std::filesystem::path> lp_dir;
};

/// Every solver output is verified; a failure throws std::runtime_error.
SuiteReport run_suite(const SuiteOptions& options);

/// Runtimes are only serialized when `with_timings` is set, so the default
/// output is byte-identical across runs.
nlohmann::json report_to_json(const SuiteReport& report, bool with_timings = false);
std::string report_table(const SuiteReport& report, bool with_timings = false);

/// Seed of instance `index` of size `n_targets` within a suite.
std::uint64_t suite_instance_seed(std::uint64_t seed, int n_targets, int index);

}  // namespace fcurp
