#pragma once

#include <span>
#include <string>
#include <vector>

#include "fcurp/instance.hpp"

namespace fcurp {

double sequence_cost(const Instance& instance, std::span<const Vertex> sequence);

/// Closed walk from the start depot back to it.
struct Tour {
  std::vector<Vertex> sequence;
  double cost = 0.0;

  static Tour from_sequence(const Instance& instance, std::vector<Vertex> sequence);
};

/// Depot, targets..., depot.
struct Strand {
  std::vector<Vertex> sequence;
  double fuel_required = 0.0;

  bool feasible(double capacity) const { return fuel_required <= capacity + kTolerance; }
};

struct SolveStats {
  double seconds = 0.0;
  /// Accumulated cycle-cover cost over the l metric (covering algorithm only).
  double cover_cost = 0.0;
  int cover_rounds = 0;
  /// Cost of the expanded tour before strand repair.
  double tour_cost = 0.0;
  std::vector<double> trip_costs;
  /// Cost removed by k-opt and by depot exchange during improvement.
  double kopt_gain = 0.0;
  double depot_exchange_gain = 0.0;
};

struct Solution {
  Tour tour;
  int refuel_trip_count = 0;
  std::string solver;
  SolveStats stats;

  double cost() const { return tour.cost; }
};

}  // namespace fcurp
