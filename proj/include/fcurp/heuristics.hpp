#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fcurp/approx.hpp"

namespace fcurp {

/// Asymmetric TSP heuristic in the Lin-Kernighan family: nearest-neighbour start,
/// then descent over direction-aware 2-opt, or-opt (segments of 1-3) and
/// orientation-preserving 3-opt moves driven by don't-look bits, restarted from
/// seeded double-bridge kicks. `cost` is indexed by position in `nodes`.
/// Returns a cyclic ordering of `nodes`.
std::vector<Vertex> atsp_tour(const Eigen::MatrixXd& cost, std::span<const Vertex> nodes,
                              std::uint64_t seed = 1, int kicks = -1);

struct ConstructOptions {
  std::uint64_t seed = 1;
  /// Double-bridge restarts; negative picks 20 + 5 * |T|.
  int kicks = -1;
};

/// Approx with the covering step replaced by atsp_tour over the l metric.
Solution construct(const Instance& instance, const PathTable& table,
                   const ConstructOptions& options = {});

/// 2n+1 consecutive tour positions centred on one depot visit. Positions index
/// the closed tour with the terminal start depot counted once.
struct Segment {
  std::size_t center = 0;
  int span = 0;
  std::vector<std::size_t> window;
};

std::vector<Segment> segments(const Instance& instance, const Tour& tour, int span);

/// Segment-restricted k-opt: for each depot visit, applies the best improving
/// fuel-feasible k'-exchange (2 <= k' <= k) whose removed edges lie inside the
/// segment; full passes repeat until one fails to improve.
Tour k_opt(const Instance& instance, const Tour& tour, int k = 3, int span = 4);

/// Replaces each visited depot (except the terminal start depot) by
/// argmin_u f(v1, u) + f(u, v2) when that is feasible and strictly cheaper.
Tour depot_exchange(const Instance& instance, const Tour& tour);

/// Alternates k_opt and depot_exchange until neither improves.
Solution improve(const Instance& instance, const Solution& start, int k = 3, int span = 4);

/// Sub-walks that leave a target, visit only depots and return to it.
int count_refuel_trips(const Instance& instance, std::span<const Vertex> tour);

}  // namespace fcurp
