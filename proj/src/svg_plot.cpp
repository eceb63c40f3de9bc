#include "fcurp/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace fcurp {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 20.0;

struct Frame {
  double min_x, min_y, scale, height;

  double sx(double x) const { return kMargin + (x - min_x) * scale; }
  double sy(double y) const { return height - kMargin - (y - min_y) * scale; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

Pose pose_of(const Instance& instance, const Layout& layout, Vertex v) {
  return instance.is_target(v) ? layout.targets[v] : layout.depots[instance.depot_index(v)];
}

}  // namespace

std::vector<bool> refuel_trip_edges(const Instance& instance, std::span<const Vertex> tour) {
  std::vector<bool> marked(tour.size() > 0 ? tour.size() - 1 : 0, false);
  for (std::size_t i = 0; i + 1 < tour.size(); ++i) {
    if (!instance.is_target(tour[i])) continue;
    std::size_t j = i + 1;
    while (j < tour.size() && instance.is_depot(tour[j])) ++j;
    if (j < tour.size() && j > i + 1 && tour[j] == tour[i])
      for (std::size_t e = i; e < j; ++e) marked[e] = true;
  }
  return marked;
}

std::string render_svg(const Instance& instance, const Solution& solution) {
  if (!instance.layout()) throw std::invalid_argument("instance has no layout to plot");
  const Layout& layout = *instance.layout();
  const auto& tour = solution.tour.sequence;

  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  auto extend = [&](const Pose& p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const Pose& p : layout.targets) extend(p);
  for (const Pose& p : layout.depots) extend(p);

  // Dubins arcs may leave the hull of the vertices.
  std::vector<std::vector<Eigen::Vector2d>> edges;
  const bool dubins = layout.metric == Metric::Dubins && layout.turn_radius > 0.0;
  for (std::size_t i = 0; i + 1 < tour.size(); ++i) {
    const Pose a = pose_of(instance, layout, tour[i]);
    const Pose b = pose_of(instance, layout, tour[i + 1]);
    if (dubins) {
      const DubinsResult path = dubins_length(a, b, layout.turn_radius);
      edges.push_back(dubins_polyline(a, path, layout.turn_radius / 2.0));
    } else {
      edges.push_back({a.position(), b.position()});
    }
    for (const auto& q : edges.back()) extend(Pose(q.x(), q.y(), 0.0));
  }

  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double scale = (kCanvas - 2 * kMargin) / span;
  const double width = 2 * kMargin + (max_x - min_x) * scale;
  const double height = 2 * kMargin + (max_y - min_y) * scale;
  const Frame frame{min_x, min_y, scale, height};

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  out += "<title>" + solution.solver + " tour, cost " + fmt(solution.cost()) + "</title>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const std::vector<bool> trip = refuel_trip_edges(instance, tour);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out += "<polyline fill=\"none\" ";
    out += trip[e] ? "stroke=\"#d62728\" stroke-dasharray=\"6 3\""
                   : "stroke=\"#1f77b4\"";
    out += " stroke-width=\"1.50\" points=\"";
    for (std::size_t k = 0; k < edges[e].size(); ++k) {
      if (k) out += ' ';
      out += fmt(frame.sx(edges[e][k].x())) + "," + fmt(frame.sy(edges[e][k].y()));
    }
    out += "\"/>\n";
  }

  for (int d = 0; d < instance.num_depots(); ++d) {
    const Pose& p = layout.depots[d];
    out += "<rect x=\"" + fmt(frame.sx(p.x) - 6) + "\" y=\"" + fmt(frame.sy(p.y) - 6) +
           "\" width=\"12.00\" height=\"12.00\" fill=\"#2ca02c\"><title>" +
           instance.label(instance.depot(d)) + "</title></rect>\n";
  }
  for (int t = 0; t < instance.num_targets(); ++t) {
    const Pose& p = layout.targets[t];
    out += "<circle cx=\"" + fmt(frame.sx(p.x)) + "\" cy=\"" + fmt(frame.sy(p.y)) +
           "\" r=\"4.00\" fill=\"black\"><title>" + instance.label(t) + "</title></circle>\n";
  }
  out += "</svg>\n";
  return out;
}

void plot_svg(const Instance& instance, const Solution& solution,
              const std::filesystem::path& path) {
  const std::string text = render_svg(instance, solution);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace fcurp
