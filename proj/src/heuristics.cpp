#include "fcurp/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace fcurp {

namespace {

constexpr double kMinGain = 1e-9;

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Closed tour -> cyclic list (terminal start depot dropped).
std::vector<Vertex> cyclic(const Tour& tour) {
  return {tour.sequence.begin(), tour.sequence.end() - 1};
}

}  // namespace

Solution construct(const Instance& instance, const PathTable& table,
                   const ConstructOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const int nt = instance.num_targets();
  std::vector<Vertex> targets(nt);
  std::iota(targets.begin(), targets.end(), 0);
  const Eigen::MatrixXd l = table.costs().topLeftCorner(nt, nt);
  const std::vector<Vertex> order = atsp_tour(l, targets, options.seed, options.kicks);
  Solution sol = solution_from_target_walk(instance, table, order);
  sol.solver = "construct";
  sol.stats.seconds = elapsed(t0);
  return sol;
}

std::vector<Segment> segments(const Instance& instance, const Tour& tour, int span) {
  const std::vector<Vertex> cyc = cyclic(tour);
  const std::size_t m = cyc.size();
  const std::size_t width = std::min<std::size_t>(2 * static_cast<std::size_t>(span) + 1, m);
  std::vector<Segment> out;
  for (std::size_t p = 0; p < m; ++p) {
    if (!instance.is_depot(cyc[p])) continue;
    Segment seg;
    seg.center = p;
    seg.span = span;
    const std::size_t begin = (p + m - static_cast<std::size_t>(span) % m) % m;
    for (std::size_t i = 0; i < width; ++i) seg.window.push_back((begin + i) % m);
    out.push_back(std::move(seg));
  }
  return out;
}

namespace {

struct Candidate {
  std::vector<Vertex> cyc;
  std::vector<int> ids;
  double cost;
};

// Closed sequence beginning at the element tagged 0 (the original start depot).
std::vector<Vertex> close_at_anchor(const std::vector<Vertex>& cyc, const std::vector<int>& ids) {
  const auto it = std::find(ids.begin(), ids.end(), 0);
  const std::size_t r = static_cast<std::size_t>(it - ids.begin());
  std::vector<Vertex> seq;
  seq.reserve(cyc.size() + 1);
  for (std::size_t i = 0; i < cyc.size(); ++i) seq.push_back(cyc[(r + i) % cyc.size()]);
  seq.push_back(seq.front());
  return seq;
}

template <class T>
std::vector<T> reconnect(const std::vector<T>& lin, std::size_t a, std::size_t b, std::size_t c,
                         int pattern) {
  // lin = A | B | C | D with B = (a, b], C = (b, c].
  std::vector<T> A(lin.begin(), lin.begin() + a + 1);
  std::vector<T> B(lin.begin() + a + 1, lin.begin() + b + 1);
  std::vector<T> C(lin.begin() + b + 1, lin.begin() + c + 1);
  std::vector<T> Br(B.rbegin(), B.rend()), Cr(C.rbegin(), C.rend());
  std::vector<T> out = A;
  auto put = [&](const std::vector<T>& v) { out.insert(out.end(), v.begin(), v.end()); };
  switch (pattern) {
    case 0: put(Br); put(C); break;
    case 1: put(B); put(Cr); break;
    case 2: put(Br); put(Cr); break;
    case 3: put(C); put(B); break;
    case 4: put(C); put(Br); break;
    case 5: put(Cr); put(B); break;
    default: put(Cr); put(Br); break;
  }
  out.insert(out.end(), lin.begin() + c + 1, lin.end());
  return out;
}

}  // namespace

Tour k_opt(const Instance& instance, const Tour& tour, int k, int span) {
  Tour best_tour = tour;
  std::vector<Vertex> cyc = cyclic(tour);
  std::vector<int> ids(cyc.size());
  std::iota(ids.begin(), ids.end(), 0);
  const std::size_t m = cyc.size();
  if (m < 4 || k < 2) return tour;

  auto closed_cost = [&](const std::vector<Vertex>& c) {
    double total = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) total += instance.fuel(c[i], c[(i + 1) % c.size()]);
    return total;
  };

  double current = tour.cost;
  for (;;) {
    const double pass_start = current;
    const std::size_t visits = static_cast<std::size_t>(
        std::count_if(cyc.begin(), cyc.end(), [&](Vertex v) { return instance.is_depot(v); }));
    for (std::size_t i = 0; i < visits; ++i) {
      const Tour snapshot = Tour::from_sequence(instance, close_at_anchor(cyc, ids));
      const std::vector<Segment> segs = segments(instance, snapshot, span);
      if (i >= segs.size()) break;
      // Rotate the snapshot so the window starts at linear position 0.
      const std::vector<Vertex> base = cyclic(snapshot);
      const std::size_t start = segs[i].window.front();
      const std::size_t width = segs[i].window.size();
      std::vector<Vertex> lin(m);
      std::vector<int> lin_ids(m);
      {
        // ids follow the snapshot rotation, which begins at the anchor.
        std::vector<int> snap_ids(m);
        const auto it = std::find(ids.begin(), ids.end(), 0);
        const std::size_t r = static_cast<std::size_t>(it - ids.begin());
        for (std::size_t j = 0; j < m; ++j) snap_ids[j] = ids[(r + j) % m];
        for (std::size_t j = 0; j < m; ++j) {
          lin[j] = base[(start + j) % m];
          lin_ids[j] = snap_ids[(start + j) % m];
        }
      }
      // Edges inside the window: (lin[e], lin[e+1]) for e < width - 1.
      const std::size_t edges = width - 1;
      std::optional<Candidate> best;
      auto consider = [&](std::vector<Vertex> c, std::vector<int> cid) {
        const double cost = closed_cost(c);
        if (cost >= current - kMinGain) return;
        if (best && cost >= best->cost) return;
        if (!walk_feasible(instance, close_at_anchor(c, cid))) return;
        best = Candidate{std::move(c), std::move(cid), cost};
      };
      for (std::size_t a = 0; a < edges; ++a)
        for (std::size_t b = a + 1; b < edges; ++b) {
          // 2-exchange: reverse (a, b].
          consider(reconnect(lin, a, b, b, 0), reconnect(lin_ids, a, b, b, 0));
          if (k < 3) continue;
          for (std::size_t c = b + 1; c < edges; ++c)
            for (int pattern = 0; pattern < 7; ++pattern)
              consider(reconnect(lin, a, b, c, pattern), reconnect(lin_ids, a, b, c, pattern));
        }
      if (best) {
        cyc = std::move(best->cyc);
        ids = std::move(best->ids);
        current = best->cost;
      }
    }
    if (current >= pass_start - kMinGain) break;
  }
  if (current < best_tour.cost - kMinGain)
    best_tour = Tour::from_sequence(instance, close_at_anchor(cyc, ids));
  return best_tour;
}

Tour depot_exchange(const Instance& instance, const Tour& tour) {
  std::vector<Vertex> seq = tour.sequence;
  double current = tour.cost;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 1; p + 1 < seq.size(); ++p) {
      if (!instance.is_depot(seq[p])) continue;
      const Vertex v1 = seq[p - 1], v2 = seq[p + 1];
      Vertex pick = instance.depot(0);
      for (int d = 1; d < instance.num_depots(); ++d) {
        const Vertex u = instance.depot(d);
        if (instance.fuel(v1, u) + instance.fuel(u, v2) <
            instance.fuel(v1, pick) + instance.fuel(pick, v2))
          pick = u;
      }
      if (pick == seq[p]) continue;
      const double delta = instance.fuel(v1, pick) + instance.fuel(pick, v2) -
                           instance.fuel(v1, seq[p]) - instance.fuel(seq[p], v2);
      if (delta >= -kMinGain) continue;
      const Vertex old = seq[p];
      seq[p] = pick;
      if (walk_feasible(instance, seq)) {
        current += delta;
        changed = true;
      } else {
        seq[p] = old;
      }
    }
  }
  if (current >= tour.cost - kMinGain) return tour;
  return Tour::from_sequence(instance, std::move(seq));
}

Solution improve(const Instance& instance, const Solution& start, int k, int span) {
  const auto t0 = std::chrono::steady_clock::now();
  Solution sol = start;
  for (;;) {
    const double before = sol.tour.cost;
    Tour after_kopt = k_opt(instance, sol.tour, k, span);
    sol.stats.kopt_gain += sol.tour.cost - after_kopt.cost;
    Tour after_exchange = depot_exchange(instance, after_kopt);
    sol.stats.depot_exchange_gain += after_kopt.cost - after_exchange.cost;
    sol.tour = std::move(after_exchange);
    if (sol.tour.cost >= before - kMinGain) break;
  }
  sol.refuel_trip_count = count_refuel_trips(instance, sol.tour.sequence);
  sol.solver = "improve";
  sol.stats.seconds = start.stats.seconds + elapsed(t0);
  return sol;
}

int count_refuel_trips(const Instance& instance, std::span<const Vertex> tour) {
  int trips = 0;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    if (!instance.is_target(tour[i])) continue;
    std::size_t j = i + 1;
    while (j < tour.size() && instance.is_depot(tour[j])) ++j;
    if (j > i + 1 && j < tour.size() && tour[j] == tour[i]) ++trips;
  }
  return trips;
}

}  // namespace fcurp
