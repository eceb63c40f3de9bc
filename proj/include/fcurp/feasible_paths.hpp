#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "fcurp/instance.hpp"

namespace fcurp {

class NoFeasiblePath : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-fuel path between two vertices. Interior vertices are depots only.
struct FeasiblePath {
  std::vector<Vertex> sequence;
  double cost = 0.0;

  bool direct() const { return sequence.size() == 2; }
};

/// Fuel the vehicle can carry when leaving `v`: L - C_v for targets, L at depots.
double departure_budget(const Instance& instance, const DerivedConstants& constants, Vertex v);
/// Fuel that must remain on arrival at `v`: B_v for targets, 0 at depots.
double arrival_reserve(const Instance& instance, const DerivedConstants& constants, Vertex v);

/// Least-fuel refuel-feasible path from `from` to `to`.
///
/// The direct edge is taken whenever f <= budget(from) - reserve(to). Otherwise a
/// label-setting search runs over {from, to} plus all depots with the edges
///   (from, d)  if f <= budget(from),
///   (d1, d2)   if f <= L,
///   (d, to)    if f <= L - reserve(to).
/// Ties go to fewer hops, then the lexicographically smallest sequence.
/// Throws NoFeasiblePath when `to` is unreachable.
FeasiblePath least_fuel_path(const Instance& instance, const DerivedConstants& constants,
                             Vertex from, Vertex to);

/// PATH(x, y) between two distinct targets.
FeasiblePath target_path(const Instance& instance, const DerivedConstants& constants, Vertex x,
                         Vertex y);

/// Least-fuel route over the depot graph {(i, j) : f_ij <= L}; returns l'.
FeasiblePath depot_path(const Instance& instance, Vertex from, Vertex to);

/// Simulates `path` starting with departure_budget(first) and checks that fuel
/// never goes negative and at least arrival_reserve(last) remains.
bool path_respects_fuel(const Instance& instance, const DerivedConstants& constants,
                        const FeasiblePath& path);

/// Feasible paths for every ordered pair of distinct vertices.
class PathTable {
 public:
  PathTable(const Instance& instance, DerivedConstants constants);

  const FeasiblePath& path(Vertex from, Vertex to) const;
  double cost(Vertex from, Vertex to) const { return cost_(from, to); }
  /// l over all vertices; diagonal is zero.
  const Eigen::MatrixXd& costs() const { return cost_; }
  const DerivedConstants& constants() const { return constants_; }

 private:
  int n_;
  DerivedConstants constants_;
  std::vector<FeasiblePath> paths_;
  Eigen::MatrixXd cost_;
};

PathTable build_path_table(const Instance& instance, const DerivedConstants& constants);

}  // namespace fcurp
