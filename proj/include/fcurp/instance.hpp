#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fcurp/dubins.hpp"

namespace fcurp {

/// Absolute tolerance for every fuel and metric comparison.
inline constexpr double kTolerance = 1e-9;

/// Global vertex index: targets occupy [0, |T|), depots [|T|, |T| + |D|).
using Vertex = int;

enum class VertexKind { Target, Depot };

struct VertexId {
  int index = 0;
  VertexKind kind = VertexKind::Target;
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

enum class Metric { Dubins, Euclidean };

/// Optional geometry an instance was generated from; used for plotting.
struct Layout {
  std::vector<Pose> targets;
  std::vector<Pose> depots;
  double turn_radius = 0.0;
  Metric metric = Metric::Euclidean;
};

/// Problem input. Immutable after construction.
class Instance {
 public:
  /// Throws std::invalid_argument if `fuel` is not (targets + depots) square or the
  /// start depot is out of range. Everything else is left to validate().
  Instance(int num_targets, int num_depots, int start_depot, Eigen::MatrixXd fuel,
           double capacity, std::optional<Layout> layout = std::nullopt);

  int num_targets() const { return num_targets_; }
  int num_depots() const { return num_depots_; }
  int num_vertices() const { return num_targets_ + num_depots_; }

  Vertex target(int i) const { return i; }
  Vertex depot(int d) const { return num_targets_ + d; }
  Vertex start() const { return depot(start_depot_); }
  int start_depot() const { return start_depot_; }

  bool is_target(Vertex v) const { return v >= 0 && v < num_targets_; }
  bool is_depot(Vertex v) const { return v >= num_targets_ && v < num_vertices(); }
  bool contains(Vertex v) const { return v >= 0 && v < num_vertices(); }
  int depot_index(Vertex v) const { return v - num_targets_; }
  VertexId id(Vertex v) const;
  Vertex vertex(const VertexId& id) const;
  /// "t3", "d0", ...
  std::string label(Vertex v) const;

  double fuel(Vertex i, Vertex j) const { return fuel_(i, j); }
  const Eigen::MatrixXd& fuel_matrix() const { return fuel_; }
  double capacity() const { return capacity_; }

  const std::optional<Layout>& layout() const { return layout_; }

 private:
  int num_targets_;
  int num_depots_;
  int start_depot_;
  Eigen::MatrixXd fuel_;
  double capacity_;
  std::optional<Layout> layout_;
};

enum class ViolationKind {
  EmptyTargets,
  EmptyDepots,
  NonPositiveCapacity,
  NonZeroDiagonal,
  NegativeCost,
  TriangleInequality,
  UnreachableTarget,
  DepotGraphDisconnected,
};

struct Violation {
  ViolationKind kind;
  std::string message;
  std::vector<Vertex> vertices;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

/// Reports every broken standing assumption; never throws.
ValidationReport validate(const Instance& instance);

/// All-pairs least-fuel costs over the depot graph {(i, j) : f_ij <= L}, by
/// Floyd-Warshall. Unreachable pairs hold +inf.
struct DepotDistances {
  Eigen::MatrixXd cost;     // |D| x |D|, depot-local indices
  Eigen::MatrixXi next_hop; // -1 when unreachable

  /// Depot-local index sequence from `from` to `to`, both inclusive.
  std::vector<int> route(int from, int to) const;
};

DepotDistances depot_distances(const Instance& instance);

struct DerivedConstants {
  Eigen::VectorXd min_inbound;   // C_x = min_d f_dx
  Eigen::VectorXd min_outbound;  // B_x = min_d f_xd
  std::vector<Vertex> nearest_start;     // m_x, attains C_x
  std::vector<Vertex> nearest_terminal;  // n_x, attains B_x
  double a = 0.0;
  double beta = 1.0;
  Eigen::MatrixXd depot_cost;  // l'
  /// a >= 1 - eps: the approximation factor is undefined.
  bool degenerate_bound = false;
};

DerivedConstants derive_constants(const Instance& instance);

}  // namespace fcurp
