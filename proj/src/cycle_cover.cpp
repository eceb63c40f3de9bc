#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "fcurp/approx.hpp"

namespace fcurp {

std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw std::invalid_argument("assignment needs a square matrix");
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is a sentinel.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
  return assignment;
}

CycleCover min_cycle_cover(std::span<const Vertex> targets, const PathTable& table) {
  const int k = static_cast<int>(targets.size());
  if (k < 2) throw std::invalid_argument("cycle cover needs at least two targets");

  Eigen::MatrixXd cost(k, k);
  double max_l = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) {
        cost(i, j) = table.cost(targets[i], targets[j]);
        max_l = std::max(max_l, cost(i, j));
      }
  const double forbidden = 1e6 * std::max(max_l, 1.0);
  for (int i = 0; i < k; ++i) cost(i, i) = forbidden;

  const std::vector<int> next = min_cost_assignment(cost);
  CycleCover cover;
  for (int i = 0; i < k; ++i) {
    if (next[i] == i) throw std::logic_error("cycle cover selected a self-loop");
    cover.edges.emplace_back(targets[i], targets[next[i]]);
    cover.cost += cost(i, next[i]);
  }
  std::vector<bool> seen(k, false);
  for (int i = 0; i < k; ++i) {
    if (seen[i]) continue;
    std::vector<Vertex> cycle;
    for (int j = i; !seen[j]; j = next[j]) {
      seen[j] = true;
      cycle.push_back(targets[j]);
    }
    cover.cycles.push_back(std::move(cycle));
  }
  return cover;
}

std::vector<Vertex> euler_circuit(std::vector<std::pair<Vertex, Vertex>> edges) {
  if (edges.empty()) return {};
  std::sort(edges.begin(), edges.end());
  std::map<Vertex, std::vector<Vertex>> out;
  for (const auto& [tail, head] : edges) out[tail].push_back(head);
  std::map<Vertex, std::size_t> cursor;

  std::vector<Vertex> stack{edges.front().first};
  std::vector<Vertex> circuit;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    auto& heads = out[v];
    std::size_t& c = cursor[v];
    if (c < heads.size()) {
      stack.push_back(heads[c++]);
    } else {
      circuit.push_back(v);
      stack.pop_back();
    }
  }
  if (circuit.size() != edges.size() + 1)
    throw std::logic_error("edge multigraph is not connected");
  std::reverse(circuit.begin(), circuit.end());
  circuit.pop_back();
  return circuit;
}

CoveringResult covering_tour(const Instance& instance, const PathTable& table) {
  CoveringResult result;
  std::vector<Vertex> active;
  for (int t = 0; t < instance.num_targets(); ++t) active.push_back(instance.target(t));
  if (active.size() == 1) {
    result.sequence = active;
    return result;
  }

  std::vector<std::pair<Vertex, Vertex>> edges;
  while (active.size() >= 2) {
    CycleCover cover = min_cycle_cover(active, table);
    ++result.rounds;
    result.cover_cost += cover.cost;
    edges.insert(edges.end(), cover.edges.begin(), cover.edges.end());
    const bool single = cover.cycles.size() == 1;
    std::vector<Vertex> reps;
    for (const auto& cycle : cover.cycles) reps.push_back(*std::min_element(cycle.begin(), cycle.end()));
    std::sort(reps.begin(), reps.end());
    result.covers.push_back(std::move(cover));
    if (single) break;
    active = std::move(reps);
  }
  result.sequence = euler_circuit(std::move(edges));
  return result;
}

}  // namespace fcurp
