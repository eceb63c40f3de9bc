#include "fcurp/dubins.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fcurp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Rounding guards for the closed-form class parameters.
constexpr double kClampSlack = 1e-10;
constexpr double kAngleSnap = 1e-12;

double mod2pi(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi - kAngleSnap) r = 0.0;
  return r;
}

enum class Piece { Left, Straight, Right };

constexpr std::array<Piece, 3> pieces(DubinsWord word) {
  switch (word) {
    case DubinsWord::LSL: return {Piece::Left, Piece::Straight, Piece::Left};
    case DubinsWord::LSR: return {Piece::Left, Piece::Straight, Piece::Right};
    case DubinsWord::RSL: return {Piece::Right, Piece::Straight, Piece::Left};
    case DubinsWord::RSR: return {Piece::Right, Piece::Straight, Piece::Right};
    case DubinsWord::RLR: return {Piece::Right, Piece::Left, Piece::Right};
    case DubinsWord::LRL: return {Piece::Left, Piece::Right, Piece::Left};
  }
  return {Piece::Left, Piece::Straight, Piece::Left};
}

// Normalized frame: start at the origin, goal on the +x axis at distance d.
struct Frame {
  double alpha, beta, d;
  double sa, sb, ca, cb, c_ab;
};

Frame make_frame(const Pose& from, const Pose& to, double radius) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double theta = mod2pi(std::atan2(dy, dx));
  Frame f{};
  f.d = std::hypot(dx, dy) / radius;
  f.alpha = mod2pi(from.heading - theta);
  f.beta = mod2pi(to.heading - theta);
  f.sa = std::sin(f.alpha);
  f.sb = std::sin(f.beta);
  f.ca = std::cos(f.alpha);
  f.cb = std::cos(f.beta);
  f.c_ab = std::cos(f.alpha - f.beta);
  return f;
}

bool clamp_square(double& p_sq) {
  if (p_sq < -kClampSlack) return false;
  p_sq = std::max(p_sq, 0.0);
  return true;
}

bool clamp_unit(double& v) {
  if (std::abs(v) > 1.0 + kClampSlack) return false;
  v = std::clamp(v, -1.0, 1.0);
  return true;
}

bool solve_word(const Frame& f, DubinsWord word, std::array<double, 3>& out) {
  const double d = f.d;
  switch (word) {
    case DubinsWord::LSL: {
      const double tmp0 = d + f.sa - f.sb;
      double p_sq = 2.0 + d * d - 2.0 * f.c_ab + 2.0 * d * (f.sa - f.sb);
      if (!clamp_square(p_sq)) return false;
      const double tmp1 = std::atan2(f.cb - f.ca, tmp0);
      out = {mod2pi(tmp1 - f.alpha), std::sqrt(p_sq), mod2pi(f.beta - tmp1)};
      return true;
    }
    case DubinsWord::RSR: {
      const double tmp0 = d - f.sa + f.sb;
      double p_sq = 2.0 + d * d - 2.0 * f.c_ab + 2.0 * d * (f.sb - f.sa);
      if (!clamp_square(p_sq)) return false;
      const double tmp1 = std::atan2(f.ca - f.cb, tmp0);
      out = {mod2pi(f.alpha - tmp1), std::sqrt(p_sq), mod2pi(tmp1 - f.beta)};
      return true;
    }
    case DubinsWord::LSR: {
      double p_sq = -2.0 + d * d + 2.0 * f.c_ab + 2.0 * d * (f.sa + f.sb);
      if (!clamp_square(p_sq)) return false;
      const double p = std::sqrt(p_sq);
      const double tmp0 = std::atan2(-f.ca - f.cb, d + f.sa + f.sb) - std::atan2(-2.0, p);
      out = {mod2pi(tmp0 - f.alpha), p, mod2pi(tmp0 - f.beta)};
      return true;
    }
    case DubinsWord::RSL: {
      double p_sq = -2.0 + d * d + 2.0 * f.c_ab - 2.0 * d * (f.sa + f.sb);
      if (!clamp_square(p_sq)) return false;
      const double p = std::sqrt(p_sq);
      const double tmp0 = std::atan2(f.ca + f.cb, d - f.sa - f.sb) - std::atan2(2.0, p);
      out = {mod2pi(f.alpha - tmp0), p, mod2pi(f.beta - tmp0)};
      return true;
    }
    case DubinsWord::RLR: {
      double tmp0 = (6.0 - d * d + 2.0 * f.c_ab + 2.0 * d * (f.sa - f.sb)) / 8.0;
      if (!clamp_unit(tmp0)) return false;
      const double phi = std::atan2(f.ca - f.cb, d - f.sa + f.sb);
      const double p = mod2pi(kTwoPi - std::acos(tmp0));
      const double t = mod2pi(f.alpha - phi + mod2pi(p / 2.0));
      out = {t, p, mod2pi(f.alpha - f.beta - t + mod2pi(p))};
      return true;
    }
    case DubinsWord::LRL: {
      double tmp0 = (6.0 - d * d + 2.0 * f.c_ab + 2.0 * d * (f.sb - f.sa)) / 8.0;
      if (!clamp_unit(tmp0)) return false;
      const double phi = std::atan2(f.ca - f.cb, d + f.sa - f.sb);
      const double p = mod2pi(kTwoPi - std::acos(tmp0));
      const double t = mod2pi(-f.alpha - phi + p / 2.0);
      out = {t, p, mod2pi(f.beta - f.alpha - t + mod2pi(p))};
      return true;
    }
  }
  return false;
}

constexpr std::array<DubinsWord, 6> kWords{DubinsWord::LSL, DubinsWord::LSR, DubinsWord::RSL,
                                           DubinsWord::RSR, DubinsWord::RLR, DubinsWord::LRL};

Pose advance(const Pose& p, Piece piece, double t) {
  // unit-radius motion
  switch (piece) {
    case Piece::Left:
      return {p.x + std::sin(p.heading + t) - std::sin(p.heading),
              p.y - std::cos(p.heading + t) + std::cos(p.heading), p.heading + t};
    case Piece::Right:
      return {p.x - std::sin(p.heading - t) + std::sin(p.heading),
              p.y + std::cos(p.heading - t) - std::cos(p.heading), p.heading - t};
    case Piece::Straight:
      return {p.x + std::cos(p.heading) * t, p.y + std::sin(p.heading) * t, p.heading};
  }
  return p;
}

}  // namespace

Pose::Pose(double x_, double y_, double heading_) : x(x_), y(y_), heading(normalize_angle(heading_)) {}

double normalize_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::string_view to_string(DubinsWord word) {
  switch (word) {
    case DubinsWord::LSL: return "LSL";
    case DubinsWord::LSR: return "LSR";
    case DubinsWord::RSL: return "RSL";
    case DubinsWord::RSR: return "RSR";
    case DubinsWord::RLR: return "RLR";
    case DubinsWord::LRL: return "LRL";
  }
  return "?";
}

bool dubins_word_length(const Pose& from, const Pose& to, double radius, DubinsWord word,
                        DubinsResult& out) {
  const Frame frame = make_frame(from, to, radius);
  std::array<double, 3> seg{};
  if (!solve_word(frame, word, seg)) return false;
  out.word = word;
  out.segments = seg;
  out.radius = radius;
  out.length = radius * (seg[0] + seg[1] + seg[2]);
  return true;
}

DubinsResult dubins_length(const Pose& from, const Pose& to, double radius) {
  DubinsResult best;
  best.radius = radius;
  if (from.x == to.x && from.y == to.y && from.heading == to.heading) return best;

  const Frame frame = make_frame(from, to, radius);
  bool found = false;
  for (DubinsWord word : kWords) {
    std::array<double, 3> seg{};
    if (!solve_word(frame, word, seg)) continue;
    const double len = radius * (seg[0] + seg[1] + seg[2]);
    if (!found || len < best.length) {
      best.length = len;
      best.word = word;
      best.segments = seg;
      found = true;
    }
  }
  return best;
}

Pose dubins_sample(const Pose& from, const DubinsResult& path, double distance) {
  const double r = path.radius;
  double remaining = std::clamp(distance / r, 0.0, path.length / r);
  Pose p{0.0, 0.0, from.heading};
  const auto kinds = pieces(path.word);
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = std::min(remaining, path.segments[i]);
    p = advance(p, kinds[i], t);
    remaining -= t;
    if (remaining <= 0.0) break;
  }
  return {from.x + p.x * r, from.y + p.y * r, p.heading};
}

std::vector<Eigen::Vector2d> dubins_polyline(const Pose& from, const DubinsResult& path,
                                             double step) {
  std::vector<Eigen::Vector2d> pts;
  const int n = std::max(1, static_cast<int>(std::ceil(path.length / step)));
  pts.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    pts.push_back(dubins_sample(from, path, path.length * i / n).position());
  }
  return pts;
}

Eigen::MatrixXd fuel_matrix_from_poses(const std::vector<Pose>& target_poses,
                                       const std::vector<Pose>& depot_poses, double radius,
                                       double scale) {
  std::vector<Pose> all(target_poses);
  all.insert(all.end(), depot_poses.begin(), depot_poses.end());
  const auto n = static_cast<Eigen::Index>(all.size());
  Eigen::MatrixXd fuel = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) fuel(i, j) = scale * dubins_length(all[i], all[j], radius).length;
  return fuel;
}

Eigen::MatrixXd euclidean_fuel_matrix(const std::vector<Pose>& target_poses,
                                      const std::vector<Pose>& depot_poses, double scale) {
  std::vector<Pose> all(target_poses);
  all.insert(all.end(), depot_poses.begin(), depot_poses.end());
  const auto n = static_cast<Eigen::Index>(all.size());
  Eigen::MatrixXd fuel = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) fuel(i, j) = scale * (all[i].position() - all[j].position()).norm();
  return fuel;
}

}  // namespace fcurp
