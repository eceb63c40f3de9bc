#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (kTwoPi - a < 1e-12) a = 0.0;
  return a;
}

// Turn angle from heading a to heading b, turning left (+1) or right (-1).
double turn(double a, double b, int dir) { return dir > 0 ? wrap(b - a) : wrap(a - b); }

Eigen::Vector2d center(double x, double y, double h, int dir, double r) {
  // left circle sits at +90 degrees from the heading, right circle at -90
  return {x - dir * r * std::sin(h), y + dir * r * std::cos(h)};
}

}  // namespace

std::vector<DubinsCandidate> dubins_candidates(double x0, double y0, double h0, double x1,
                                               double y1, double h1, double r) {
  std::vector<DubinsCandidate> out;
  const int dirs[2] = {+1, -1};
  auto letter = [](int d) { return d > 0 ? 'L' : 'R'; };

  for (int a : dirs) {
    for (int b : dirs) {
      const Eigen::Vector2d c1 = center(x0, y0, h0, a, r);
      const Eigen::Vector2d c2 = center(x1, y1, h1, b, r);
      const Eigen::Vector2d v = c2 - c1;
      const double d = v.norm();
      DubinsCandidate c;
      c.word[0] = letter(a);
      c.word[1] = 'S';
      c.word[2] = letter(b);
      if (a == b) {
        if (d < 1e-12) {
          // concentric: one arc
          c.seg[0] = r * turn(h0, h1, a);
        } else {
          const double psi = std::atan2(v.y(), v.x());
          c.seg[0] = r * turn(h0, psi, a);
          c.seg[1] = d;
          c.seg[2] = r * turn(psi, h1, b);
        }
      } else {
        if (d < 2.0 * r) continue;
        const double ell = std::sqrt(std::max(0.0, d * d - 4.0 * r * r));
        const double phi = std::atan2(v.y(), v.x());
        // c2 - c1 = ell * u(psi) - 2r * a * n(psi), n the left normal
        const double psi = phi + a * std::atan2(2.0 * r, ell);
        c.seg[0] = r * turn(h0, psi, a);
        c.seg[1] = ell;
        c.seg[2] = r * turn(psi, h1, b);
      }
      c.length = c.seg[0] + c.seg[1] + c.seg[2];
      out.push_back(c);
    }
  }

  for (int a : dirs) {
    const Eigen::Vector2d c1 = center(x0, y0, h0, a, r);
    const Eigen::Vector2d c3 = center(x1, y1, h1, a, r);
    const Eigen::Vector2d v = c3 - c1;
    const double d = v.norm();
    if (d > 4.0 * r) continue;
    const double phi = std::atan2(v.y(), v.x());
    const double half = std::acos(std::clamp(d / (4.0 * r), -1.0, 1.0));
    for (int side : dirs) {
      const double ang = phi + side * half;
      const Eigen::Vector2d cm = c1 + 2.0 * r * Eigen::Vector2d(std::cos(ang), std::sin(ang));
      const Eigen::Vector2d p = 0.5 * (c1 + cm);
      const Eigen::Vector2d q = 0.5 * (cm + c3);
      // heading on a circle of direction `dir` at point z: radius angle + dir * 90deg
      const double hp = std::atan2(p.y() - c1.y(), p.x() - c1.x()) + a * std::numbers::pi / 2;
      const double hq = std::atan2(q.y() - c3.y(), q.x() - c3.x()) + a * std::numbers::pi / 2;
      DubinsCandidate c;
      c.word[0] = a > 0 ? 'L' : 'R';
      c.word[1] = a > 0 ? 'R' : 'L';
      c.word[2] = c.word[0];
      c.seg[0] = r * turn(h0, hp, a);
      c.seg[1] = r * turn(hp, hq, -a);
      c.seg[2] = r * turn(hq, h1, a);
      c.length = c.seg[0] + c.seg[1] + c.seg[2];
      out.push_back(c);
    }
  }
  return out;
}

Eigen::Vector3d fly(double x0, double y0, double h0, const DubinsCandidate& c, double r,
                    double step) {
  double x = x0, y = y0, h = h0;
  for (int k = 0; k < 3; ++k) {
    const char w = c.word[k];
    const double kappa = w == 'L' ? 1.0 / r : (w == 'R' ? -1.0 / r : 0.0);
    const int n = std::max(1, static_cast<int>(std::ceil(c.seg[k] / step)));
    const double ds = c.seg[k] / n;
    for (int i = 0; i < n; ++i) {
      const double hm = h + 0.5 * kappa * ds;
      x += ds * std::cos(hm);
      y += ds * std::sin(hm);
      h += kappa * ds;
    }
  }
  return {x, y, wrap(h)};
}

double dubins_min(double x0, double y0, double h0, double x1, double y1, double h1, double r) {
  if (x0 == x1 && y0 == y1 && wrap(h0) == wrap(h1)) return 0.0;
  double best = kInf;
  for (const auto& c : dubins_candidates(x0, y0, h0, x1, y1, h1, r)) {
    const Eigen::Vector3d end = fly(x0, y0, h0, c, r, r * 1e-3);
    const double dh = std::abs(std::remainder(end.z() - h1, kTwoPi));
    // A candidate that does not land on the goal pose is a construction error.
    if (std::hypot(end.x() - x1, end.y() - y1) > 1e-4 * (r + c.length) || dh > 1e-5) continue;
    best = std::min(best, c.length);
  }
  return best;
}

Eigen::MatrixXd euclid(const std::vector<Eigen::Vector2d>& points) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = i == j ? 0.0 : (points[i] - points[j]).norm();
  return m;
}

Instance random_euclidean(std::mt19937_64& rng, int n_targets, int n_depots, double slack,
                          double side) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < n_targets + n_depots; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    pts.emplace_back(x, y);
  }
  Eigen::MatrixXd f = euclid(pts);

  double need = 0.0;
  for (int t = 0; t < n_targets; ++t) {
    double c = kInf, b = kInf;
    for (int d = n_targets; d < n_targets + n_depots; ++d) {
      c = std::min(c, f(d, t));
      b = std::min(b, f(t, d));
    }
    need = std::max(need, c + b);
  }
  // Bottleneck of the depot graph (Prim on max edge).
  std::vector<bool> in(n_depots, false);
  std::vector<double> key(n_depots, kInf);
  key[0] = 0.0;
  for (int it = 0; it < n_depots; ++it) {
    int best = -1;
    for (int d = 0; d < n_depots; ++d)
      if (!in[d] && (best < 0 || key[d] < key[best])) best = d;
    in[best] = true;
    need = std::max(need, key[best]);
    for (int d = 0; d < n_depots; ++d)
      if (!in[d]) key[d] = std::min(key[d], f(n_targets + best, n_targets + d));
  }
  return Instance(n_targets, n_depots, 0, std::move(f), slack * need);
}

Eigen::MatrixXd depot_costs(const Instance& inst) {
  const int nd = inst.num_depots();
  const double L = inst.capacity();
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(nd, nd, kInf);
  for (int s = 0; s < nd; ++s) {
    dist(s, s) = 0.0;
    for (int round = 0; round < nd; ++round)
      for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j) {
          const double f = inst.fuel(inst.depot(i), inst.depot(j));
          if (i != j && f <= L + kEps && dist(s, i) + f < dist(s, j)) dist(s, j) = dist(s, i) + f;
        }
  }
  return dist;
}

namespace {

double min_in(const Instance& inst, Vertex t) {
  double c = kInf;
  for (int d = 0; d < inst.num_depots(); ++d) c = std::min(c, inst.fuel(inst.depot(d), t));
  return c;
}
double min_out(const Instance& inst, Vertex t) {
  double b = kInf;
  for (int d = 0; d < inst.num_depots(); ++d) b = std::min(b, inst.fuel(t, inst.depot(d)));
  return b;
}

// Calls visit(seq) for every ordered selection of distinct depots, including the empty one.
void each_depot_sequence(int nd, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> seq;
  std::vector<bool> used(nd, false);
  std::function<void()> rec = [&] {
    visit(seq);
    for (int d = 0; d < nd; ++d) {
      if (used[d]) continue;
      used[d] = true;
      seq.push_back(d);
      rec();
      seq.pop_back();
      used[d] = false;
    }
  };
  rec();
}

}  // namespace

double brute_path_cost(const Instance& inst, Vertex from, Vertex to) {
  const double L = inst.capacity();
  const double budget = inst.is_target(from) ? L - min_in(inst, from) : L;
  const double reserve = inst.is_target(to) ? min_out(inst, to) : 0.0;
  double best = kInf;
  each_depot_sequence(inst.num_depots(), [&](const std::vector<int>& seq) {
    std::vector<Vertex> walk{from};
    for (int d : seq) {
      const Vertex v = inst.depot(d);
      if (v == from || v == to) return;
      walk.push_back(v);
    }
    walk.push_back(to);
    double cost = 0.0;
    for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
      const double f = inst.fuel(walk[k], walk[k + 1]);
      double limit = L;
      if (k == 0) limit = budget;
      if (k + 1 == walk.size() - 1) limit = std::min(limit, (k == 0 ? budget : L) - reserve);
      if (f > limit + kEps) return;
      cost += f;
    }
    best = std::min(best, cost);
  });
  return best;
}

double brute_depot_cost(const Instance& inst, Vertex from, Vertex to) {
  const double L = inst.capacity();
  double best = kInf;
  each_depot_sequence(inst.num_depots(), [&](const std::vector<int>& seq) {
    std::vector<Vertex> walk{from};
    for (int d : seq) {
      const Vertex v = inst.depot(d);
      if (v == from || v == to) return;
      walk.push_back(v);
    }
    walk.push_back(to);
    double cost = 0.0;
    for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
      const double f = inst.fuel(walk[k], walk[k + 1]);
      if (f > L + kEps) return;
      cost += f;
    }
    best = std::min(best, cost);
  });
  return best;
}

double min_derangement_cost(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  double best = kInf;
  do {
    double c = 0.0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (p[i] == i) ok = false;
      c += cost(i, p[i]);
    }
    if (ok) best = std::min(best, c);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

double brute_tsp(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (n < 2) return 0.0;
  std::vector<int> p(n - 1);
  for (int i = 0; i < n - 1; ++i) p[i] = i + 1;
  double best = kInf;
  do {
    double c = cost(0, p[0]) + cost(p.back(), 0);
    for (int i = 0; i + 1 < n - 1; ++i) c += cost(p[i], p[i + 1]);
    best = std::min(best, c);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

bool simulate(const Instance& inst, const std::vector<Vertex>& walk, double* cost) {
  double fuel = inst.capacity();
  double total = 0.0;
  bool ok = true;
  for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
    const double f = inst.fuel(walk[k], walk[k + 1]);
    fuel -= f;
    total += f;
    if (fuel < -kEps) ok = false;
    if (inst.is_depot(walk[k + 1])) fuel = inst.capacity();
  }
  if (cost) *cost = total;
  return ok;
}

namespace {

struct Label {
  double fuel;
  double cost;
};

void add_label(std::vector<Label>& set, Label l) {
  for (const Label& o : set)
    if (o.fuel >= l.fuel - 1e-12 && o.cost <= l.cost + 1e-12) return;
  std::erase_if(set, [&](const Label& o) { return l.fuel >= o.fuel && l.cost <= o.cost; });
  set.push_back(l);
}

}  // namespace

double fcurp_optimum(const Instance& inst) {
  const int nt = inst.num_targets();
  const int nd = inst.num_depots();
  const double L = inst.capacity();
  const Eigen::MatrixXd dc = depot_costs(inst);
  const int s = inst.start_depot();

  std::vector<int> order(nt);
  for (int i = 0; i < nt; ++i) order[i] = i;
  double best = kInf;
  do {
    // leave s: through depot route s -> d, then d -> first target
    std::vector<Label> labels;
    for (int d = 0; d < nd; ++d) {
      const double f = inst.fuel(inst.depot(d), order[0]);
      if (dc(s, d) < kInf && f <= L + kEps) add_label(labels, {L - f, dc(s, d) + f});
    }
    for (int k = 0; k + 1 < nt && !labels.empty(); ++k) {
      const Vertex x = order[k], y = order[k + 1];
      std::vector<Label> next;
      for (const Label& l : labels) {
        const double fxy = inst.fuel(x, y);
        if (fxy <= l.fuel + kEps) add_label(next, {l.fuel - fxy, l.cost + fxy});
        for (int d1 = 0; d1 < nd; ++d1) {
          const double out = inst.fuel(x, inst.depot(d1));
          if (out > l.fuel + kEps) continue;
          for (int d2 = 0; d2 < nd; ++d2) {
            const double in = inst.fuel(inst.depot(d2), y);
            if (dc(d1, d2) == kInf || in > L + kEps) continue;
            add_label(next, {L - in, l.cost + out + dc(d1, d2) + in});
          }
        }
      }
      labels = std::move(next);
    }
    const Vertex last = order[nt - 1];
    for (const Label& l : labels)
      for (int d = 0; d < nd; ++d) {
        const double out = inst.fuel(last, inst.depot(d));
        if (out <= l.fuel + kEps && dc(d, s) < kInf) best = std::min(best, l.cost + out + dc(d, s));
      }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

double fcurp_walks(const Instance& inst) {
  const int nt = inst.num_targets();
  const int nd = inst.num_depots();
  std::vector<std::vector<int>> seqs;
  each_depot_sequence(nd, [&](const std::vector<int>& q) { seqs.push_back(q); });

  std::vector<int> order(nt);
  for (int i = 0; i < nt; ++i) order[i] = i;
  double best = kInf;
  std::vector<Vertex> walk;
  do {
    // nt + 1 legs, each with one depot sequence
    std::vector<std::size_t> pick(nt + 1, 0);
    while (true) {
      walk.assign(1, inst.start());
      for (int leg = 0; leg <= nt; ++leg) {
        for (int d : seqs[pick[leg]]) walk.push_back(inst.depot(d));
        walk.push_back(leg < nt ? order[leg] : inst.start());
      }
      double cost;
      if (simulate(inst, walk, &cost)) best = std::min(best, cost);
      int leg = 0;
      while (leg <= nt && ++pick[leg] == seqs.size()) pick[leg++] = 0;
      if (leg > nt) break;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace oracle
