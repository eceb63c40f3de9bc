#pragma once

#include <array>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace fcurp {

/// Planar configuration of a fixed-wing vehicle. Heading is kept in [0, 2*pi).
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  Pose() = default;
  Pose(double x_, double y_, double heading_);

  Eigen::Vector2d position() const { return {x, y}; }
};

double normalize_angle(double theta);

enum class DubinsWord { LSL, LSR, RSL, RSR, RLR, LRL };

std::string_view to_string(DubinsWord word);

/// Shortest Dubins path between two poses. `segments` holds the three
/// extents in normalized units: arc angles for L/R pieces, length/radius for
/// the straight piece, so that length == radius * sum(segments).
struct DubinsResult {
  double length = 0.0;
  DubinsWord word = DubinsWord::LSL;
  std::array<double, 3> segments{0.0, 0.0, 0.0};
  double radius = 1.0;
};

DubinsResult dubins_length(const Pose& from, const Pose& to, double radius);

/// Candidate for a single word, or false when the word has no solution.
bool dubins_word_length(const Pose& from, const Pose& to, double radius, DubinsWord word,
                        DubinsResult& out);

/// Pose reached after travelling `distance` along the path.
Pose dubins_sample(const Pose& from, const DubinsResult& path, double distance);

/// Points along the path spaced at most `step` apart, endpoints included.
std::vector<Eigen::Vector2d> dubins_polyline(const Pose& from, const DubinsResult& path,
                                             double step);

/// f_ij = scale * dubins_length(pose_i, pose_j, radius); targets first, then depots.
Eigen::MatrixXd fuel_matrix_from_poses(const std::vector<Pose>& target_poses,
                                       const std::vector<Pose>& depot_poses, double radius,
                                       double scale = 1.0);

Eigen::MatrixXd euclidean_fuel_matrix(const std::vector<Pose>& target_poses,
                                      const std::vector<Pose>& depot_poses, double scale = 1.0);

}  // namespace fcurp
