#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fcurp/feasible_paths.hpp"
#include "fcurp/tour.hpp"

namespace fcurp {

/// Minimum-cost perfect assignment (Hungarian method, O(n^3)).
/// Returns assignment[row] = column.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

struct CycleCover {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::vector<Vertex>> cycles;
  double cost = 0.0;
};

/// Minimum-cost cycle cover of `targets` under the l metric. Self-assignment is
/// priced at 1e6 * max l so it is never chosen. Needs at least two targets.
CycleCover min_cycle_cover(std::span<const Vertex> targets, const PathTable& table);

/// Eulerian circuit of a connected balanced multigraph (Hierholzer), starting
/// at the lowest tail and taking out-edges in (tail, head) order. The circuit
/// is returned open: the starting vertex is not repeated at the end.
std::vector<Vertex> euler_circuit(std::vector<std::pair<Vertex, Vertex>> edges);

struct CoveringResult {
  /// Closed target walk (cyclic); every cover edge is used exactly once.
  std::vector<Vertex> sequence;
  double cover_cost = 0.0;
  int rounds = 0;
  std::vector<CycleCover> covers;
};

/// Repeated cycle covers over cycle representatives (lowest target index per
/// cycle) until a single cycle remains, then an Euler circuit of their union.
CoveringResult covering_tour(const Instance& instance, const PathTable& table);

/// Rotation of the cyclic target walk that is cheapest to splice onto the start
/// depot: argmin over r of l(s, w_r) + l(w_{r-1}, s) - l(w_{r-1}, w_r).
std::size_t best_splice_rotation(const Instance& instance, const PathTable& table,
                                 std::span<const Vertex> cyclic_targets);

/// Substitutes PATH(x, y) for every consecutive pair and splices the start depot.
Tour expand_tour(const Instance& instance, const PathTable& table,
                 std::span<const Vertex> cyclic_targets);

std::vector<Strand> strand_decompose(const Instance& instance, const Tour& tour);

struct StrandRepair {
  Strand strand;
  int trips = 0;
  std::vector<double> trip_costs;
};

/// Greedy refuel-trip repair: a trip t -> n_t -> PATH(n_t, m_t) -> m_t -> t after
/// every target, then each trip in insertion order is dropped if the strand stays
/// fuel-feasible without it.
StrandRepair repair_strand(const Instance& instance, const PathTable& table,
                           const Strand& strand);

/// Fuel simulation of a walk that starts full at a depot and refuels at depots.
bool walk_feasible(const Instance& instance, std::span<const Vertex> walk);

struct TourRepair {
  Tour tour;
  int trips = 0;
  std::vector<double> trip_costs;
};

TourRepair repair_tour(const Instance& instance, const PathTable& table, const Tour& tour);

/// Expansion plus repair of a cyclic target walk; shared by Approx and the
/// construction heuristic.
Solution solution_from_target_walk(const Instance& instance, const PathTable& table,
                                   std::span<const Vertex> cyclic_targets);

Solution approx_solve(const Instance& instance);
Solution approx_solve(const Instance& instance, const PathTable& table);

}  // namespace fcurp
