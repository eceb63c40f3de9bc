#include <algorithm>
#include <array>
#include <limits>
#include <random>
#include <stdexcept>

#include "fcurp/heuristics.hpp"

namespace fcurp {

namespace {

constexpr double kMinGain = 1e-10;

class AtspSearch {
 public:
  explicit AtspSearch(const Eigen::MatrixXd& cost) : c_(cost), k_(static_cast<int>(cost.rows())) {}

  double cost(const std::vector<int>& tour) const {
    double total = 0.0;
    for (int i = 0; i < k_; ++i) total += c_(tour[i], tour[(i + 1) % k_]);
    return total;
  }

  std::vector<int> nearest_neighbour() const {
    std::vector<int> tour{0};
    std::vector<bool> used(k_, false);
    used[0] = true;
    for (int step = 1; step < k_; ++step) {
      const int cur = tour.back();
      int best = -1;
      for (int j = 0; j < k_; ++j)
        if (!used[j] && (best < 0 || c_(cur, j) < c_(cur, best))) best = j;
      used[best] = true;
      tour.push_back(best);
    }
    return tour;
  }

  void local_search(std::vector<int>& tour) const {
    if (k_ < 4) return;
    std::vector<bool> dont_look(k_, false);
    std::vector<int> queue(tour.begin(), tour.end());
    std::vector<int> pos(k_);
    std::vector<int> touched;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.erase(queue.begin());
      for (int i = 0; i < k_; ++i) pos[tour[i]] = i;
      touched.clear();
      const bool improved = try_anchor(tour, pos[v], touched) ||
                            try_anchor(tour, (pos[v] + k_ - 1) % k_, touched);
      if (!improved) {
        dont_look[v] = true;
        continue;
      }
      touched.push_back(v);
      for (int u : touched)
        if (dont_look[u] || std::find(queue.begin(), queue.end(), u) == queue.end()) {
          dont_look[u] = false;
          queue.push_back(u);
        }
    }
  }

  std::vector<int> double_bridge(const std::vector<int>& tour, std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> pick(1, k_ - 1);
    std::array<int, 3> cut{};
    do {
      cut = {pick(rng), pick(rng), pick(rng)};
      std::sort(cut.begin(), cut.end());
    } while (cut[0] == cut[1] || cut[1] == cut[2]);
    std::vector<int> out(tour.begin(), tour.begin() + cut[0]);
    out.insert(out.end(), tour.begin() + cut[1], tour.begin() + cut[2]);
    out.insert(out.end(), tour.begin() + cut[0], tour.begin() + cut[1]);
    out.insert(out.end(), tour.begin() + cut[2], tour.end());
    return out;
  }

 private:
  // Tries every move that removes the edge leaving position `anchor`. On success
  // rewrites `tour` and records endpoints of the new edges in `touched`.
  bool try_anchor(std::vector<int>& tour, int anchor, std::vector<int>& touched) const {
    // r[k-1] -> r[0] is the anchor edge.
    std::vector<int> r(k_);
    for (int i = 0; i < k_; ++i) r[i] = tour[(anchor + 1 + i) % k_];
    const int tail = r[k_ - 1];

    // 2-opt: reverse r[0..e].
    double fwd = 0.0, bwd = 0.0;
    for (int e = 1; e <= k_ - 3; ++e) {
      fwd += c_(r[e - 1], r[e]);
      bwd += c_(r[e], r[e - 1]);
      const double removed = c_(tail, r[0]) + c_(r[e], r[e + 1]) + fwd;
      const double added = c_(tail, r[e]) + c_(r[0], r[e + 1]) + bwd;
      if (added < removed - kMinGain) {
        std::reverse(r.begin(), r.begin() + e + 1);
        touched.insert(touched.end(), {tail, r[0], r[e], r[e + 1]});
        tour = std::move(r);
        return true;
      }
    }

    // or-opt: move r[0..len-1] between rest[q] and rest[q+1], optionally reversed.
    for (int len = 1; len <= 3 && len <= k_ - 2; ++len) {
      const int s1 = r[0], sl = r[len - 1];
      double inner_fwd = 0.0, inner_bwd = 0.0;
      for (int p = 1; p < len; ++p) {
        inner_fwd += c_(r[p - 1], r[p]);
        inner_bwd += c_(r[p], r[p - 1]);
      }
      const double gain_out = c_(tail, s1) + c_(sl, r[len]) - c_(tail, r[len]);
      // rest = r[len..k-1]; skip q = k-1-len (the original slot).
      for (int q = len; q < k_ - 1; ++q) {
        const int a = r[q], b = r[q + 1];
        const double base = c_(a, b);
        const double plain = c_(a, s1) + c_(sl, b) - base;
        const double flipped = c_(a, sl) + c_(s1, b) - base + inner_bwd - inner_fwd;
        const bool use_flip = flipped < plain;
        if (std::min(plain, flipped) < gain_out - kMinGain) {
          std::vector<int> seg(r.begin(), r.begin() + len);
          if (use_flip) std::reverse(seg.begin(), seg.end());
          std::vector<int> out(r.begin() + len, r.begin() + q + 1);
          out.insert(out.end(), seg.begin(), seg.end());
          out.insert(out.end(), r.begin() + q + 1, r.end());
          touched.insert(touched.end(), {tail, r[len], a, b, s1, sl});
          tour = std::move(out);
          return true;
        }
      }
    }

    // Orientation-preserving 3-opt: B C D -> C B D with B = r[0..e], C = r[e+1..g].
    for (int e = 0; e <= k_ - 3; ++e)
      for (int g = e + 1; g <= k_ - 2; ++g) {
        const double removed = c_(tail, r[0]) + c_(r[e], r[e + 1]) + c_(r[g], r[g + 1]);
        const double added = c_(tail, r[e + 1]) + c_(r[g], r[0]) + c_(r[e], r[g + 1]);
        if (added < removed - kMinGain) {
          std::vector<int> out(r.begin() + e + 1, r.begin() + g + 1);
          out.insert(out.end(), r.begin(), r.begin() + e + 1);
          out.insert(out.end(), r.begin() + g + 1, r.end());
          touched.insert(touched.end(), {tail, r[0], r[e], r[e + 1], r[g], r[g + 1]});
          tour = std::move(out);
          return true;
        }
      }
    return false;
  }

  const Eigen::MatrixXd& c_;
  int k_;
};

}  // namespace

std::vector<Vertex> atsp_tour(const Eigen::MatrixXd& cost, std::span<const Vertex> nodes,
                              std::uint64_t seed, int kicks) {
  const int k = static_cast<int>(nodes.size());
  if (cost.rows() != k || cost.cols() != k)
    throw std::invalid_argument("cost matrix does not match node list");
  if (k <= 3) {
    std::vector<Vertex> out(nodes.begin(), nodes.end());
    if (k == 3) {
      const double a = cost(0, 1) + cost(1, 2) + cost(2, 0);
      const double b = cost(0, 2) + cost(2, 1) + cost(1, 0);
      if (b < a) std::swap(out[1], out[2]);
    }
    return out;
  }

  AtspSearch search(cost);
  std::vector<int> best = search.nearest_neighbour();
  search.local_search(best);
  double best_cost = search.cost(best);

  std::mt19937_64 rng(seed);
  const int rounds = kicks >= 0 ? kicks : 20 + 5 * k;
  for (int it = 0; it < rounds; ++it) {
    std::vector<int> cand = search.double_bridge(best, rng);
    search.local_search(cand);
    const double c = search.cost(cand);
    if (c < best_cost - kMinGain) {
      best = std::move(cand);
      best_cost = c;
    }
  }

  std::vector<Vertex> out;
  out.reserve(k);
  for (int i : best) out.push_back(nodes[i]);
  return out;
}

}  // namespace fcurp
