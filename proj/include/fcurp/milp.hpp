#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fcurp/instance.hpp"

namespace fcurp {

enum class VarType { Continuous, Binary, Integer };
enum class Sense { LessEqual, GreaterEqual, Equal };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;  // +inf for unbounded
  VarType type = VarType::Continuous;
};

/// Rows are grouped by family; family names are stable and used in reports.
///   degree_balance  in-degree equals out-degree at every vertex
///   target_entry    every target entered exactly once
///   source_flow     |T| units leave the start depot
///   target_flow     each target absorbs one unit
///   depot_flow      other depots conserve flow
///   flow_capacity   p_ij <= |T| x_ij
///   fuel_tt_upper / fuel_tt_lower   r_j = r_i - f_ij on target->target arcs
///   fuel_dt_lower / fuel_dt_upper   r_j = L - f_ij on depot->target arcs
///   fuel_reserve    r_i >= f_ij on target->depot arcs
struct Row {
  std::string name;
  std::string family;
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
};

struct MilpModel {
  std::vector<Variable> vars;
  std::vector<Row> rows;
  std::vector<std::pair<int, double>> objective;
  double big_m = 0.0;
  int num_targets = 0;
  int num_depots = 0;
  /// Variable indices; -1 on the diagonal.
  Eigen::MatrixXi x_index;
  Eigen::MatrixXi p_index;
  std::vector<int> r_index;

  int x(Vertex i, Vertex j) const { return x_index(i, j); }
  int p(Vertex i, Vertex j) const { return p_index(i, j); }
  int r(Vertex t) const { return r_index[t]; }
  std::size_t count_rows(std::string_view family) const;
};

/// Arc-flow model with big-M fuel propagation, M = L + max f.
MilpModel build_model(const Instance& instance);

/// CPLEX-LP text; byte-identical for identical models.
void write_lp(const MilpModel& model, std::ostream& out);
void export_model(const MilpModel& model, const std::filesystem::path& path);

struct RowViolation {
  std::string row;
  double activity = 0.0;
  double rhs = 0.0;
};

struct TourEncoding {
  /// The tour with repeat target visits shortcut and consecutive duplicates merged.
  std::vector<Vertex> canonical_tour;
  Eigen::VectorXd values;
  double objective = 0.0;
  std::vector<RowViolation> violations;

  bool satisfied() const { return violations.empty(); }
};

/// Maps a verified tour onto model variables (traversal counts, commodity flow
/// along the tour, fuel on arrival) and checks every row, bound and integrality
/// condition. Any reported violation points at a transcription error.
TourEncoding encode_tour(const Instance& instance, const MilpModel& model,
                         std::span<const Vertex> tour, double tolerance = 1e-6);

}  // namespace fcurp
