#include "fcurp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fcurp {

Instance::Instance(int num_targets, int num_depots, int start_depot, Eigen::MatrixXd fuel,
                   double capacity, std::optional<Layout> layout)
    : num_targets_(num_targets),
      num_depots_(num_depots),
      start_depot_(start_depot),
      fuel_(std::move(fuel)),
      capacity_(capacity),
      layout_(std::move(layout)) {
  if (num_targets < 0 || num_depots < 0)
    throw std::invalid_argument("negative vertex count");
  const auto n = static_cast<Eigen::Index>(num_targets + num_depots);
  if (fuel_.rows() != n || fuel_.cols() != n) {
    std::ostringstream os;
    os << "fuel matrix is " << fuel_.rows() << "x" << fuel_.cols() << ", expected " << n << "x"
       << n;
    throw std::invalid_argument(os.str());
  }
  if (num_depots > 0 && (start_depot < 0 || start_depot >= num_depots))
    throw std::invalid_argument("start depot out of range");
  if (layout_ && (static_cast<int>(layout_->targets.size()) != num_targets ||
                  static_cast<int>(layout_->depots.size()) != num_depots))
    throw std::invalid_argument("layout size does not match vertex counts");
}

VertexId Instance::id(Vertex v) const {
  if (is_target(v)) return {v, VertexKind::Target};
  return {depot_index(v), VertexKind::Depot};
}

Vertex Instance::vertex(const VertexId& id) const {
  return id.kind == VertexKind::Target ? target(id.index) : depot(id.index);
}

std::string Instance::label(Vertex v) const {
  return (is_target(v) ? "t" : "d") + std::to_string(id(v).index);
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

DepotDistances depot_distances(const Instance& instance) {
  const int nd = instance.num_depots();
  const double inf = std::numeric_limits<double>::infinity();
  const double L = instance.capacity();
  DepotDistances out;
  out.cost = Eigen::MatrixXd::Constant(nd, nd, inf);
  out.next_hop = Eigen::MatrixXi::Constant(nd, nd, -1);
  for (int i = 0; i < nd; ++i) {
    out.cost(i, i) = 0.0;
    out.next_hop(i, i) = i;
    for (int j = 0; j < nd; ++j) {
      const double f = instance.fuel(instance.depot(i), instance.depot(j));
      if (i != j && f <= L + kTolerance) {
        out.cost(i, j) = f;
        out.next_hop(i, j) = j;
      }
    }
  }
  for (int k = 0; k < nd; ++k)
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j)
        if (out.cost(i, k) + out.cost(k, j) < out.cost(i, j)) {
          out.cost(i, j) = out.cost(i, k) + out.cost(k, j);
          out.next_hop(i, j) = out.next_hop(i, k);
        }
  return out;
}

std::vector<int> DepotDistances::route(int from, int to) const {
  std::vector<int> seq{from};
  if (next_hop(from, to) < 0) return {};
  while (from != to) {
    from = next_hop(from, to);
    seq.push_back(from);
  }
  return seq;
}

ValidationReport validate(const Instance& instance) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg, std::vector<Vertex> vs) {
    report.violations.push_back({kind, std::move(msg), std::move(vs)});
  };

  const int nt = instance.num_targets();
  const int nd = instance.num_depots();
  const int nv = instance.num_vertices();
  const double L = instance.capacity();
  const Eigen::MatrixXd& f = instance.fuel_matrix();

  if (nt == 0) add(ViolationKind::EmptyTargets, "instance has no targets", {});
  if (nd == 0) add(ViolationKind::EmptyDepots, "instance has no depots", {});
  if (!(L > 0.0)) add(ViolationKind::NonPositiveCapacity, "capacity must be positive", {});

  for (Vertex i = 0; i < nv; ++i) {
    if (f(i, i) != 0.0)
      add(ViolationKind::NonZeroDiagonal, "nonzero self cost at " + instance.label(i), {i});
    for (Vertex j = 0; j < nv; ++j)
      if (!(f(i, j) >= 0.0))
        add(ViolationKind::NegativeCost,
            "negative cost " + instance.label(i) + "->" + instance.label(j), {i, j});
  }

  for (Vertex i = 0; i < nv; ++i)
    for (Vertex j = 0; j < nv; ++j) {
      if (j == i) continue;
      for (Vertex k = 0; k < nv; ++k) {
        if (k == i || k == j) continue;
        if (f(i, j) + f(j, k) < f(i, k) - kTolerance)
          add(ViolationKind::TriangleInequality,
              "triangle inequality broken on " + instance.label(i) + "," + instance.label(j) +
                  "," + instance.label(k),
              {i, j, k});
      }
    }

  if (nd > 0) {
    for (int x = 0; x < nt; ++x) {
      double c = std::numeric_limits<double>::infinity();
      double b = c;
      for (int d = 0; d < nd; ++d) {
        c = std::min(c, f(instance.depot(d), x));
        b = std::min(b, f(x, instance.depot(d)));
      }
      if (c + b > L + kTolerance)
        add(ViolationKind::UnreachableTarget, "unreachable target " + instance.label(x), {x});
    }

    const DepotDistances dd = depot_distances(instance);
    std::vector<Vertex> cut;
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j)
        if (dd.next_hop(i, j) < 0) {
          cut = {instance.depot(i), instance.depot(j)};
          i = nd;
          break;
        }
    if (!cut.empty())
      add(ViolationKind::DepotGraphDisconnected,
          "depot graph disconnected: no route " + instance.label(cut[0]) + "->" +
              instance.label(cut[1]),
          cut);
  }
  return report;
}

DerivedConstants derive_constants(const Instance& instance) {
  const int nt = instance.num_targets();
  const int nd = instance.num_depots();
  const double L = instance.capacity();
  DerivedConstants c;
  c.min_inbound.resize(nt);
  c.min_outbound.resize(nt);
  c.nearest_start.resize(nt);
  c.nearest_terminal.resize(nt);

  c.a = 0.0;
  for (int x = 0; x < nt; ++x) {
    int m = 0, n = 0;
    for (int d = 1; d < nd; ++d) {
      if (instance.fuel(instance.depot(d), x) < instance.fuel(instance.depot(m), x)) m = d;
      if (instance.fuel(x, instance.depot(d)) < instance.fuel(x, instance.depot(n))) n = d;
    }
    c.nearest_start[x] = instance.depot(m);
    c.nearest_terminal[x] = instance.depot(n);
    c.min_inbound[x] = instance.fuel(instance.depot(m), x);
    c.min_outbound[x] = instance.fuel(x, instance.depot(n));
    c.a = std::max(c.a, (c.min_inbound[x] + c.min_outbound[x]) / L);
  }

  c.depot_cost = depot_distances(instance).cost;
  c.beta = 1.0;
  if (nd > 1) {
    double beta = 0.0;
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j) {
        if (i == j) continue;
        const double fwd = c.depot_cost(i, j);
        const double back = c.depot_cost(j, i);
        if (fwd > 0.0)
          beta = std::max(beta, back / fwd);
        else if (back > 0.0)
          beta = std::numeric_limits<double>::infinity();
      }
    c.beta = beta > 0.0 ? beta : 1.0;
  }
  c.degenerate_bound = c.a >= 1.0 - kTolerance;
  return c;
}

}  // namespace fcurp
