#include "fcurp/feasible_paths.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace fcurp {

double departure_budget(const Instance& instance, const DerivedConstants& constants, Vertex v) {
  return instance.is_target(v) ? instance.capacity() - constants.min_inbound[v]
                               : instance.capacity();
}

double arrival_reserve(const Instance& instance, const DerivedConstants& constants, Vertex v) {
  return instance.is_target(v) ? constants.min_outbound[v] : 0.0;
}

namespace {

struct Label {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<Vertex> sequence;
  bool settled = false;

  bool reached() const { return !sequence.empty(); }
};

bool better(const Label& a, const Label& b) {
  if (!b.reached()) return a.reached();
  if (!a.reached()) return false;
  return std::forward_as_tuple(a.cost, a.sequence.size(), a.sequence) <
         std::forward_as_tuple(b.cost, b.sequence.size(), b.sequence);
}

FeasiblePath search(const Instance& instance, Vertex from, Vertex to, double budget,
                    double reserve) {
  std::vector<Vertex> nodes{from};
  for (int d = 0; d < instance.num_depots(); ++d) {
    const Vertex v = instance.depot(d);
    if (v != from && v != to) nodes.push_back(v);
  }
  if (to != from) nodes.push_back(to);

  const double L = instance.capacity();
  auto limit = [&](Vertex u, Vertex v) {
    return (u == from ? budget : L) - (v == to ? reserve : 0.0);
  };
  auto edge_allowed = [&](Vertex u, Vertex v) {
    if (u == v || v == from || u == to) return false;
    if (!instance.is_depot(u) && !instance.is_depot(v)) return false;
    return instance.fuel(u, v) <= limit(u, v) + kTolerance;
  };

  std::vector<Label> labels(nodes.size());
  labels[0].cost = 0.0;
  labels[0].sequence = {from};
  const std::size_t sink = nodes.size() - 1;

  for (;;) {
    std::size_t pick = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!labels[i].settled && labels[i].reached() &&
          (pick == nodes.size() || better(labels[i], labels[pick])))
        pick = i;
    if (pick == nodes.size()) break;
    labels[pick].settled = true;
    if (pick == sink) break;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (labels[j].settled || !edge_allowed(nodes[pick], nodes[j])) continue;
      Label candidate;
      candidate.cost = labels[pick].cost + instance.fuel(nodes[pick], nodes[j]);
      candidate.sequence = labels[pick].sequence;
      candidate.sequence.push_back(nodes[j]);
      if (better(candidate, labels[j])) labels[j] = std::move(candidate);
    }
  }

  if (!labels[sink].reached())
    throw NoFeasiblePath("no feasible path " + instance.label(from) + " -> " + instance.label(to));
  return {std::move(labels[sink].sequence), labels[sink].cost};
}

}  // namespace

FeasiblePath least_fuel_path(const Instance& instance, const DerivedConstants& constants,
                             Vertex from, Vertex to) {
  if (from == to) return {{from}, 0.0};
  const double budget = departure_budget(instance, constants, from);
  const double reserve = arrival_reserve(instance, constants, to);
  const double direct = instance.fuel(from, to);
  if (budget - reserve >= direct - kTolerance) return {{from, to}, direct};
  return search(instance, from, to, budget, reserve);
}

FeasiblePath target_path(const Instance& instance, const DerivedConstants& constants, Vertex x,
                         Vertex y) {
  if (!instance.is_target(x) || !instance.is_target(y) || x == y)
    throw std::invalid_argument("target_path needs two distinct targets");
  return least_fuel_path(instance, constants, x, y);
}

FeasiblePath depot_path(const Instance& instance, Vertex from, Vertex to) {
  if (!instance.is_depot(from) || !instance.is_depot(to))
    throw std::invalid_argument("depot_path needs two depots");
  if (from == to) return {{from}, 0.0};
  const double L = instance.capacity();
  return search(instance, from, to, L, 0.0);
}

bool path_respects_fuel(const Instance& instance, const DerivedConstants& constants,
                        const FeasiblePath& path) {
  if (path.sequence.empty()) return false;
  double fuel = departure_budget(instance, constants, path.sequence.front());
  for (std::size_t i = 1; i < path.sequence.size(); ++i) {
    fuel -= instance.fuel(path.sequence[i - 1], path.sequence[i]);
    if (fuel < -kTolerance) return false;
    if (instance.is_depot(path.sequence[i]) && i + 1 < path.sequence.size())
      fuel = instance.capacity();
  }
  return fuel >= arrival_reserve(instance, constants, path.sequence.back()) - kTolerance;
}

PathTable::PathTable(const Instance& instance, DerivedConstants constants)
    : n_(instance.num_vertices()), constants_(std::move(constants)) {
  paths_.resize(static_cast<std::size_t>(n_) * n_);
  cost_ = Eigen::MatrixXd::Zero(n_, n_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = 0; v < n_; ++v) {
      FeasiblePath p = least_fuel_path(instance, constants_, u, v);
      cost_(u, v) = p.cost;
      paths_[static_cast<std::size_t>(u) * n_ + v] = std::move(p);
    }
}

const FeasiblePath& PathTable::path(Vertex from, Vertex to) const {
  return paths_.at(static_cast<std::size_t>(from) * n_ + to);
}

PathTable build_path_table(const Instance& instance, const DerivedConstants& constants) {
  return PathTable(instance, constants);
}

}  // namespace fcurp
