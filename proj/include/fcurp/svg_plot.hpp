#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "fcurp/instance.hpp"
#include "fcurp/tour.hpp"

namespace fcurp {

/// Tour edges lying on a refuel trip: a walk that leaves a target, passes only
/// depots and comes back to the same target. Indexed by tour position of the
/// edge's tail.
std::vector<bool> refuel_trip_edges(const Instance& instance, std::span<const Vertex> tour);

/// Depots as squares, targets as dots, tour edges as polylines (Dubins arcs
/// sampled coarsely, straight lines for the Euclidean metric). Refuel trips are
/// drawn dashed in a second colour. Requires instance.layout().
std::string render_svg(const Instance& instance, const Solution& solution);

/// Throws std::runtime_error on I/O failure.
void plot_svg(const Instance& instance, const Solution& solution,
              const std::filesystem::path& path);

}  // namespace fcurp
