#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "fcurp/exact.hpp"
#include "fcurp/feasible_paths.hpp"

namespace fcurp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// One way of flying from target u to target v.
struct Leg {
  double cost;
  double need;    // fuel required on leaving u
  double arrive;  // fuel on arrival at v; unused for the direct edge
  int first;      // depot-local index, -1 for the direct edge
  int last;
};

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, const ExactLimits& limits)
      : inst_(instance),
        limits_(limits),
        nt_(instance.num_targets()),
        nd_(instance.num_depots()),
        L_(instance.capacity()),
        depots_(depot_distances(instance)),
        table_(instance, derive_constants(instance)) {
    build_legs();
  }

  ExactResult run() {
    t0_ = std::chrono::steady_clock::now();
    std::vector<Choice> root_children;
    for (Vertex v = 0; v < nt_; ++v)
      for (int d2 = 0; d2 < nd_; ++d2) {
        const double to_d2 = depots_.cost(inst_.start_depot(), d2);
        const double f = inst_.fuel(inst_.depot(d2), v);
        if (!std::isfinite(to_d2) || f > L_ + kTolerance) continue;
        const double fuel = L_ - f;
        if (fuel < table_.constants().min_outbound[v] - kTolerance) continue;
        root_children.push_back({v, to_d2 + f, fuel, inst_.start_depot(), d2});
      }
    std::sort(root_children.begin(), root_children.end(), [](const Choice& a, const Choice& b) {
      return std::tie(a.cost, a.v, a.last) < std::tie(b.cost, b.v, b.last);
    });
    for (const Choice& c : root_children) {
      if (aborted_) break;
      path_.push_back(c);
      dfs(c.v, 1u << c.v, c.fuel, c.cost);
      path_.pop_back();
    }

    ExactResult result;
    result.nodes = nodes_;
    if (best_.empty()) {
      result.status = aborted_ ? ExactStatus::BoundOnly : ExactStatus::Infeasible;
      return result;
    }
    result.status = aborted_ ? ExactStatus::BoundOnly : ExactStatus::Optimal;
    result.solution.tour = Tour::from_sequence(inst_, best_);
    result.solution.solver = "exact";
    result.solution.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    return result;
  }

 private:
  struct Choice {
    Vertex v;
    double cost;  // leg cost
    double fuel;  // fuel on arrival at v
    int first;    // for the root leg: the start depot
    int last;     // -1 for direct
  };

  void build_legs() {
    legs_.assign(static_cast<std::size_t>(nt_) * nt_, {});
    for (Vertex u = 0; u < nt_; ++u)
      for (Vertex v = 0; v < nt_; ++v) {
        if (u == v) continue;
        auto& out = legs_[u * nt_ + v];
        out.push_back({inst_.fuel(u, v), inst_.fuel(u, v), 0.0, -1, -1});
        std::vector<Leg> via;
        for (int d1 = 0; d1 < nd_; ++d1)
          for (int d2 = 0; d2 < nd_; ++d2) {
            const double hop = depots_.cost(d1, d2);
            const double out_f = inst_.fuel(u, inst_.depot(d1));
            const double in_f = inst_.fuel(inst_.depot(d2), v);
            if (!std::isfinite(hop) || out_f > L_ + kTolerance || in_f > L_ + kTolerance) continue;
            via.push_back({out_f + hop + in_f, out_f, L_ - in_f, d1, d2});
          }
        // Drop depot legs dominated in (cost, need, arrival).
        for (std::size_t i = 0; i < via.size(); ++i) {
          bool dominated = false;
          for (std::size_t j = 0; j < via.size() && !dominated; ++j) {
            if (i == j) continue;
            const Leg& a = via[j];
            const Leg& b = via[i];
            const bool weak = a.cost <= b.cost && a.need <= b.need && a.arrive >= b.arrive;
            const bool strict = a.cost < b.cost || a.need < b.need || a.arrive > b.arrive;
            dominated = weak && (strict || j < i);
          }
          if (!dominated) out.push_back(via[i]);
        }
      }
    close_.assign(nt_, {});
    for (Vertex u = 0; u < nt_; ++u)
      for (int d1 = 0; d1 < nd_; ++d1) {
        const double hop = depots_.cost(d1, inst_.start_depot());
        if (!std::isfinite(hop)) continue;
        const double f = inst_.fuel(u, inst_.depot(d1));
        close_[u].push_back({f + hop, f, 0.0, d1, inst_.start_depot()});
      }
  }

  // Cheapest way home from u holding `fuel`; sets `via` to the first depot.
  double close_cost(Vertex u, double fuel, int& via) const {
    double best = kInf;
    via = -1;
    for (const Leg& leg : close_[u])
      if (leg.need <= fuel + kTolerance && leg.cost < best) {
        best = leg.cost;
        via = leg.first;
      }
    return best;
  }

  double lower_bound(Vertex u, std::uint32_t mask) const {
    double bound = 0.0;
    const Vertex s = inst_.start();
    double home = table_.cost(u, s);
    for (Vertex v = 0; v < nt_; ++v) {
      if (mask & (1u << v)) continue;
      double in = table_.cost(u, v);
      for (Vertex w = 0; w < nt_; ++w)
        if (w != v && !(mask & (1u << w))) in = std::min(in, table_.cost(w, v));
      bound += in;
      home = std::min(home, table_.cost(v, s));
    }
    return bound + home;
  }

  bool dominated(Vertex u, std::uint32_t mask, double fuel, double cost) {
    auto& labels = memo_[(static_cast<std::uint64_t>(mask) << 5) | static_cast<std::uint64_t>(u)];
    for (const auto& [f, c] : labels)
      if (f >= fuel - kTolerance && c <= cost + kTolerance) return true;
    std::erase_if(labels, [&](const std::pair<double, double>& l) {
      return l.first <= fuel + kTolerance && l.second >= cost - kTolerance;
    });
    labels.emplace_back(fuel, cost);
    return false;
  }

  void dfs(Vertex u, std::uint32_t mask, double fuel, double cost) {
    if (aborted_) return;
    if (++nodes_ > limits_.max_nodes) {
      aborted_ = true;
      return;
    }
    if ((nodes_ & 0xfff) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count() >
            limits_.max_seconds) {
      aborted_ = true;
      return;
    }
    if (cost + lower_bound(u, mask) >= incumbent_ - kTolerance) return;
    if (dominated(u, mask, fuel, cost)) return;

    const std::uint32_t full = (nt_ >= 32) ? ~0u : ((1u << nt_) - 1u);
    if (mask == full) {
      int via = -1;
      const double home = close_cost(u, fuel, via);
      if (cost + home < incumbent_ - kTolerance) {
        incumbent_ = cost + home;
        record(via);
      }
      return;
    }

    std::vector<Choice> children;
    for (Vertex v = 0; v < nt_; ++v) {
      if (mask & (1u << v)) continue;
      for (const Leg& leg : legs_[u * nt_ + v]) {
        if (leg.need > fuel + kTolerance) continue;
        const double arrive = leg.first < 0 ? fuel - leg.cost : leg.arrive;
        if (arrive < table_.constants().min_outbound[v] - kTolerance) continue;
        children.push_back({v, leg.cost, arrive, leg.first, leg.last});
      }
    }
    std::sort(children.begin(), children.end(), [](const Choice& a, const Choice& b) {
      return std::tie(a.cost, a.v, a.first, a.last) < std::tie(b.cost, b.v, b.first, b.last);
    });
    for (const Choice& c : children) {
      path_.push_back(c);
      dfs(c.v, mask | (1u << c.v), c.fuel, cost + c.cost);
      path_.pop_back();
      if (aborted_) return;
    }
  }

  void append_route(std::vector<Vertex>& seq, int from, int to) const {
    for (int d : depots_.route(from, to)) {
      const Vertex v = inst_.depot(d);
      if (seq.empty() || seq.back() != v) seq.push_back(v);
    }
  }

  void record(int home_via) {
    std::vector<Vertex> seq{inst_.start()};
    for (std::size_t i = 0; i < path_.size(); ++i) {
      const Choice& c = path_[i];
      if (i == 0)
        append_route(seq, inst_.start_depot(), c.last);
      else if (c.last >= 0)
        append_route(seq, c.first, c.last);
      seq.push_back(c.v);
    }
    append_route(seq, home_via, inst_.start_depot());
    best_ = std::move(seq);
  }

  const Instance& inst_;
  ExactLimits limits_;
  int nt_, nd_;
  double L_;
  DepotDistances depots_;
  PathTable table_;
  std::vector<std::vector<Leg>> legs_;
  std::vector<std::vector<Leg>> close_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<double, double>>> memo_;
  std::vector<Choice> path_;
  std::vector<Vertex> best_;
  double incumbent_ = kInf;
  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace

ExactResult solve_exact(const Instance& instance, const ExactLimits& limits) {
  if (instance.num_targets() > 30) throw std::invalid_argument("too many targets for solve_exact");
  BranchAndBound bnb(instance, limits);
  return bnb.run();
}

}  // namespace fcurp
