#include "fcurp/approx.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace fcurp {

std::size_t best_splice_rotation(const Instance& instance, const PathTable& table,
                                 std::span<const Vertex> cyclic_targets) {
  const std::size_t k = cyclic_targets.size();
  if (k <= 1) return 0;
  const Vertex s = instance.start();
  std::size_t best = 0;
  double best_cost = 0.0;
  for (std::size_t r = 0; r < k; ++r) {
    const Vertex first = cyclic_targets[r];
    const Vertex last = cyclic_targets[(r + k - 1) % k];
    const double splice = table.cost(s, first) + table.cost(last, s) - table.cost(last, first);
    if (r == 0 || splice < best_cost) {
      best = r;
      best_cost = splice;
    }
  }
  return best;
}

Tour expand_tour(const Instance& instance, const PathTable& table,
                 std::span<const Vertex> cyclic_targets) {
  if (cyclic_targets.empty()) throw std::invalid_argument("empty target walk");
  const std::size_t k = cyclic_targets.size();
  const std::size_t r = best_splice_rotation(instance, table, cyclic_targets);
  const Vertex s = instance.start();

  std::vector<Vertex> seq;
  auto append = [&](Vertex from, Vertex to) {
    const auto& p = table.path(from, to).sequence;
    seq.insert(seq.end(), p.begin() + 1, p.end());
  };
  seq.push_back(s);
  Vertex prev = s;
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex t = cyclic_targets[(r + i) % k];
    append(prev, t);
    prev = t;
  }
  append(prev, s);
  return Tour::from_sequence(instance, std::move(seq));
}

std::vector<Strand> strand_decompose(const Instance& instance, const Tour& tour) {
  const auto& seq = tour.sequence;
  if (seq.empty() || !instance.is_depot(seq.front()) || !instance.is_depot(seq.back()))
    throw std::invalid_argument("tour must start and end at a depot");
  std::vector<Strand> strands;
  std::size_t begin = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (!instance.is_depot(seq[i])) continue;
    Strand s;
    s.sequence.assign(seq.begin() + begin, seq.begin() + i + 1);
    s.fuel_required = sequence_cost(instance, s.sequence);
    strands.push_back(std::move(s));
    begin = i;
  }
  return strands;
}

bool walk_feasible(const Instance& instance, std::span<const Vertex> walk) {
  const double L = instance.capacity();
  double fuel = L;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    fuel -= instance.fuel(walk[i - 1], walk[i]);
    if (fuel < -kTolerance) return false;
    if (instance.is_depot(walk[i])) fuel = L;
  }
  return true;
}

namespace {

double max_strand_fuel(const Instance& instance, std::span<const Vertex> walk) {
  double worst = 0.0, run = 0.0;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    run += instance.fuel(walk[i - 1], walk[i]);
    if (instance.is_depot(walk[i])) {
      worst = std::max(worst, run);
      run = 0.0;
    }
  }
  return std::max(worst, run);
}

}  // namespace

StrandRepair repair_strand(const Instance& instance, const PathTable& table, const Strand& strand) {
  StrandRepair out;
  out.strand = strand;
  if (strand.feasible(instance.capacity())) return out;

  const auto& seq = strand.sequence;
  const DerivedConstants& c = table.constants();
  const std::size_t k = seq.size() - 2;
  std::vector<Vertex> targets(seq.begin() + 1, seq.end() - 1);
  std::vector<std::vector<Vertex>> trips(k);
  std::vector<double> trip_cost(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex t = targets[i];
    const Vertex n = c.nearest_terminal[t];
    const Vertex m = c.nearest_start[t];
    trips[i] = table.path(n, m).sequence;
    trip_cost[i] = instance.fuel(t, n) + table.cost(n, m) + instance.fuel(m, t);
  }

  std::vector<bool> active(k, true);
  auto build = [&] {
    std::vector<Vertex> walk{seq.front()};
    for (std::size_t i = 0; i < k; ++i) {
      walk.push_back(targets[i]);
      if (active[i]) {
        walk.insert(walk.end(), trips[i].begin(), trips[i].end());
        walk.push_back(targets[i]);
      }
    }
    walk.push_back(seq.back());
    return walk;
  };

  if (!walk_feasible(instance, build()))
    throw std::logic_error("strand stays infeasible with every refuel trip inserted");
  for (std::size_t i = 0; i < k; ++i) {
    active[i] = false;
    if (!walk_feasible(instance, build())) active[i] = true;
  }

  for (std::size_t i = 0; i < k; ++i)
    if (active[i]) {
      ++out.trips;
      out.trip_costs.push_back(trip_cost[i]);
    }
  out.strand.sequence = build();
  out.strand.fuel_required = max_strand_fuel(instance, out.strand.sequence);
  return out;
}

TourRepair repair_tour(const Instance& instance, const PathTable& table, const Tour& tour) {
  TourRepair out;
  std::vector<Vertex> seq{tour.sequence.front()};
  for (const Strand& strand : strand_decompose(instance, tour)) {
    StrandRepair fixed = repair_strand(instance, table, strand);
    seq.insert(seq.end(), fixed.strand.sequence.begin() + 1, fixed.strand.sequence.end());
    out.trips += fixed.trips;
    out.trip_costs.insert(out.trip_costs.end(), fixed.trip_costs.begin(), fixed.trip_costs.end());
  }
  out.tour = Tour::from_sequence(instance, std::move(seq));
  return out;
}

Solution solution_from_target_walk(const Instance& instance, const PathTable& table,
                                   std::span<const Vertex> cyclic_targets) {
  const Tour expanded = expand_tour(instance, table, cyclic_targets);
  TourRepair repaired = repair_tour(instance, table, expanded);
  Solution sol;
  sol.tour = std::move(repaired.tour);
  sol.refuel_trip_count = repaired.trips;
  sol.stats.tour_cost = expanded.cost;
  sol.stats.trip_costs = std::move(repaired.trip_costs);
  return sol;
}

Solution approx_solve(const Instance& instance, const PathTable& table) {
  const auto t0 = std::chrono::steady_clock::now();
  const CoveringResult covering = covering_tour(instance, table);
  Solution sol = solution_from_target_walk(instance, table, covering.sequence);
  sol.solver = "approx";
  sol.stats.cover_cost = covering.cover_cost;
  sol.stats.cover_rounds = covering.rounds;
  sol.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

Solution approx_solve(const Instance& instance) {
  const auto t0 = std::chrono::steady_clock::now();
  const PathTable table(instance, derive_constants(instance));
  Solution sol = approx_solve(instance, table);
  sol.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

}  // namespace fcurp
