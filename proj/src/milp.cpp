#include "fcurp/milp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fcurp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::size_t MilpModel::count_rows(std::string_view family) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const Row& r) { return r.family == family; }));
}

MilpModel build_model(const Instance& instance) {
  const int nt = instance.num_targets();
  const int nv = instance.num_vertices();
  const double L = instance.capacity();
  const Vertex s = instance.start();
  const Eigen::MatrixXd& f = instance.fuel_matrix();

  MilpModel m;
  m.num_targets = nt;
  m.num_depots = instance.num_depots();
  m.big_m = L + f.maxCoeff();
  const double M = m.big_m;
  m.x_index = Eigen::MatrixXi::Constant(nv, nv, -1);
  m.p_index = Eigen::MatrixXi::Constant(nv, nv, -1);
  m.r_index.assign(nt, -1);

  auto add_var = [&](std::string name, double lo, double hi, VarType type) {
    m.vars.push_back({std::move(name), lo, hi, type});
    return static_cast<int>(m.vars.size()) - 1;
  };
  const std::string ij = "_";
  for (Vertex i = 0; i < nv; ++i)
    for (Vertex j = 0; j < nv; ++j) {
      if (i == j) continue;
      const std::string suffix = std::to_string(i) + ij + std::to_string(j);
      if (instance.is_target(i) || instance.is_target(j)) {
        m.x_index(i, j) = add_var("x_" + suffix, 0.0, 1.0, VarType::Binary);
      } else {
        // Depot-to-depot arcs longer than a full tank are unusable.
        const double hi = f(i, j) <= L + kTolerance ? static_cast<double>(nt) : 0.0;
        m.x_index(i, j) = add_var("x_" + suffix, 0.0, hi, VarType::Integer);
      }
    }
  for (Vertex i = 0; i < nv; ++i)
    for (Vertex j = 0; j < nv; ++j)
      if (i != j)
        m.p_index(i, j) = add_var("p_" + std::to_string(i) + ij + std::to_string(j), 0.0, kInf,
                                  VarType::Continuous);
  for (Vertex t = 0; t < nt; ++t)
    m.r_index[t] = add_var("r_" + std::to_string(t), 0.0, L, VarType::Continuous);

  for (Vertex i = 0; i < nv; ++i)
    for (Vertex j = 0; j < nv; ++j)
      if (i != j) m.objective.emplace_back(m.x(i, j), f(i, j));

  auto add_row = [&](std::string family, std::string name, std::vector<std::pair<int, double>> terms,
                     Sense sense, double rhs) {
    m.rows.push_back({std::move(name), std::move(family), std::move(terms), sense, rhs});
  };

  for (Vertex k = 0; k < nv; ++k) {
    std::vector<std::pair<int, double>> terms;
    for (Vertex i = 0; i < nv; ++i)
      if (i != k) terms.emplace_back(m.x(i, k), 1.0);
    for (Vertex i = 0; i < nv; ++i)
      if (i != k) terms.emplace_back(m.x(k, i), -1.0);
    add_row("degree_balance", "degree_balance_" + std::to_string(k), std::move(terms), Sense::Equal,
            0.0);
  }
  for (Vertex k = 0; k < nt; ++k) {
    std::vector<std::pair<int, double>> terms;
    for (Vertex i = 0; i < nv; ++i)
      if (i != k) terms.emplace_back(m.x(i, k), 1.0);
    add_row("target_entry", "target_entry_" + std::to_string(k), std::move(terms), Sense::Equal,
            1.0);
  }
  {
    std::vector<std::pair<int, double>> terms;
    for (Vertex i = 0; i < nv; ++i)
      if (i != s) terms.emplace_back(m.p(s, i), 1.0);
    for (Vertex i = 0; i < nv; ++i)
      if (i != s) terms.emplace_back(m.p(i, s), -1.0);
    add_row("source_flow", "source_flow", std::move(terms), Sense::Equal, nt);
  }
  auto net_inflow = [&](Vertex i) {
    std::vector<std::pair<int, double>> terms;
    for (Vertex j = 0; j < nv; ++j)
      if (j != i) terms.emplace_back(m.p(j, i), 1.0);
    for (Vertex j = 0; j < nv; ++j)
      if (j != i) terms.emplace_back(m.p(i, j), -1.0);
    return terms;
  };
  for (Vertex i = 0; i < nt; ++i)
    add_row("target_flow", "target_flow_" + std::to_string(i), net_inflow(i), Sense::Equal, 1.0);
  for (int d = 0; d < instance.num_depots(); ++d) {
    const Vertex i = instance.depot(d);
    if (i == s) continue;
    add_row("depot_flow", "depot_flow_" + std::to_string(i), net_inflow(i), Sense::Equal, 0.0);
  }
  for (Vertex i = 0; i < nv; ++i)
    for (Vertex j = 0; j < nv; ++j)
      if (i != j)
        add_row("flow_capacity", "flow_capacity_" + std::to_string(i) + ij + std::to_string(j),
                {{m.p(i, j), 1.0}, {m.x(i, j), -static_cast<double>(nt)}}, Sense::LessEqual, 0.0);

  for (Vertex i = 0; i < nt; ++i)
    for (Vertex j = 0; j < nt; ++j) {
      if (i == j) continue;
      const std::string suffix = std::to_string(i) + ij + std::to_string(j);
      // r_j - r_i + f_ij <= M (1 - x_ij)
      add_row("fuel_tt_upper", "fuel_tt_upper_" + suffix,
              {{m.r(j), 1.0}, {m.r(i), -1.0}, {m.x(i, j), M}}, Sense::LessEqual, M - f(i, j));
      // r_j - r_i + f_ij >= -M (1 - x_ij)
      add_row("fuel_tt_lower", "fuel_tt_lower_" + suffix,
              {{m.r(j), 1.0}, {m.r(i), -1.0}, {m.x(i, j), -M}}, Sense::GreaterEqual, -M - f(i, j));
    }
  for (int d = 0; d < instance.num_depots(); ++d) {
    const Vertex i = instance.depot(d);
    for (Vertex j = 0; j < nt; ++j) {
      const std::string suffix = std::to_string(i) + ij + std::to_string(j);
      // r_j - L + f_ij >= -M (1 - x_ij)
      add_row("fuel_dt_lower", "fuel_dt_lower_" + suffix, {{m.r(j), 1.0}, {m.x(i, j), -M}},
              Sense::GreaterEqual, L - f(i, j) - M);
      // r_j - L + f_ij <= M (1 - x_ij)
      add_row("fuel_dt_upper", "fuel_dt_upper_" + suffix, {{m.r(j), 1.0}, {m.x(i, j), M}},
              Sense::LessEqual, M + L - f(i, j));
    }
  }
  for (Vertex i = 0; i < nt; ++i)
    for (int d = 0; d < instance.num_depots(); ++d) {
      const Vertex j = instance.depot(d);
      // r_i - f_ij >= -M (1 - x_ij)
      add_row("fuel_reserve", "fuel_reserve_" + std::to_string(i) + ij + std::to_string(j),
              {{m.r(i), 1.0}, {m.x(i, j), -M}}, Sense::GreaterEqual, f(i, j) - M);
    }
  return m;
}

namespace {

void write_terms(std::ostream& out, const MilpModel& model,
                 const std::vector<std::pair<int, double>>& terms) {
  std::size_t on_line = 0;
  bool first = true;
  for (const auto& [var, coef] : terms) {
    if (on_line == 6) {
      out << "\n  ";
      on_line = 0;
    }
    const double mag = std::abs(coef);
    out << (coef < 0.0 ? "- " : (first ? "" : "+ "));
    if (mag != 1.0) out << number(mag) << ' ';
    out << model.vars[var].name << ' ';
    first = false;
    ++on_line;
  }
  if (terms.empty()) out << "0 ";
}

}  // namespace

void write_lp(const MilpModel& model, std::ostream& out) {
  out << "\\ fuel-constrained routing: " << model.num_targets << " targets, " << model.num_depots
      << " depots, big-M " << number(model.big_m) << "\n";
  out << "Minimize\n obj: ";
  write_terms(out, model, model.objective);
  out << "\nSubject To\n";
  for (const Row& row : model.rows) {
    out << ' ' << row.name << ": ";
    write_terms(out, model, row.terms);
    switch (row.sense) {
      case Sense::LessEqual: out << "<= "; break;
      case Sense::GreaterEqual: out << ">= "; break;
      case Sense::Equal: out << "= "; break;
    }
    out << number(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : model.vars) {
    if (v.type == VarType::Binary) continue;
    if (v.lower == 0.0 && std::isinf(v.upper)) continue;
    out << ' ' << number(v.lower) << " <= " << v.name << " <= " << number(v.upper) << '\n';
  }
  out << "Binaries\n";
  for (const Variable& v : model.vars)
    if (v.type == VarType::Binary) out << ' ' << v.name << '\n';
  out << "Generals\n";
  for (const Variable& v : model.vars)
    if (v.type == VarType::Integer) out << ' ' << v.name << '\n';
  out << "End\n";
}

void export_model(const MilpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_lp(model, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

namespace {

std::vector<Vertex> canonicalize(const Instance& instance, std::span<const Vertex> tour) {
  std::vector<Vertex> seq(tour.begin(), tour.end());
  std::vector<bool> seen(instance.num_targets(), false);
  std::vector<Vertex> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Vertex v = seq[i];
    if (instance.is_target(v)) {
      if (seen[v]) continue;
      seen[v] = true;
    }
    if (!out.empty() && out.back() == v) continue;
    out.push_back(v);
  }
  return out;
}

}  // namespace

TourEncoding encode_tour(const Instance& instance, const MilpModel& model,
                         std::span<const Vertex> tour, double tolerance) {
  TourEncoding enc;
  enc.canonical_tour = canonicalize(instance, tour);
  const auto& seq = enc.canonical_tour;
  const double L = instance.capacity();
  const int nt = instance.num_targets();
  enc.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.vars.size()));

  // Targets still to be served after each position carry the commodity.
  std::vector<int> remaining(seq.size(), 0);
  int served = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (instance.is_target(seq[i])) ++served;
    remaining[i] = nt - served;
  }
  double fuel = L;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const Vertex a = seq[i - 1], b = seq[i];
    enc.values[model.x(a, b)] += 1.0;
    enc.values[model.p(a, b)] += remaining[i - 1];
    fuel -= instance.fuel(a, b);
    if (instance.is_depot(b))
      fuel = L;
    else
      enc.values[model.r(b)] = fuel;
  }
  for (const auto& [var, coef] : model.objective) enc.objective += coef * enc.values[var];

  for (const Row& row : model.rows) {
    double activity = 0.0;
    for (const auto& [var, coef] : row.terms) activity += coef * enc.values[var];
    const bool ok = row.sense == Sense::LessEqual      ? activity <= row.rhs + tolerance
                    : row.sense == Sense::GreaterEqual ? activity >= row.rhs - tolerance
                                                       : std::abs(activity - row.rhs) <= tolerance;
    if (!ok) enc.violations.push_back({row.name, activity, row.rhs});
  }
  for (std::size_t v = 0; v < model.vars.size(); ++v) {
    const Variable& var = model.vars[v];
    const double val = enc.values[static_cast<Eigen::Index>(v)];
    const bool in_bounds = val >= var.lower - tolerance && val <= var.upper + tolerance;
    const bool integral = var.type == VarType::Continuous || std::abs(val - std::round(val)) <= tolerance;
    if (!in_bounds || !integral) enc.violations.push_back({"bound:" + var.name, val, var.upper});
  }
  return enc;
}

}  // namespace fcurp
