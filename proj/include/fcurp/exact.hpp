#pragma once

#include <cstdint>

#include "fcurp/tour.hpp"

namespace fcurp {

struct ExactLimits {
  std::int64_t max_nodes = 200'000'000;
  double max_seconds = 120.0;
};

enum class ExactStatus { Optimal, BoundOnly, Infeasible };

struct ExactResult {
  ExactStatus status = ExactStatus::Infeasible;
  Solution solution;
  std::int64_t nodes = 0;
};

/// Combinatorial branch-and-bound over target visit orders (each target once).
/// Between consecutive targets the vehicle flies direct or leaves through a first
/// depot and re-enters through a last depot joined by the least-fuel depot route;
/// every (first, last) pair is a branch. Partial states (target, visited set)
/// keep a Pareto set of (fuel, cost) labels, and the bound adds, for each target
/// still to be entered and for the return to the start depot, its cheapest
/// incoming l-cost. Recommended for |T| <= 9, |D| <= 4.
ExactResult solve_exact(const Instance& instance, const ExactLimits& limits = {});

}  // namespace fcurp
