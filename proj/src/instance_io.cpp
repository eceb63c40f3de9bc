#include "fcurp/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace fcurp {

using nlohmann::json;

json pose_to_json(const Pose& pose) {
  return {{"x", pose.x}, {"y", pose.y}, {"heading", pose.heading}};
}

Pose pose_from_json(const json& doc) {
  if (doc.is_array()) {
    if (doc.size() < 2) throw std::runtime_error("pose array needs at least x and y");
    return {doc.at(0).get<double>(), doc.at(1).get<double>(),
            doc.size() > 2 ? doc.at(2).get<double>() : 0.0};
  }
  return {doc.at("x").get<double>(), doc.at("y").get<double>(), doc.value("heading", 0.0)};
}

namespace {

bool is_pose(const json& v) {
  return v.is_object() || (v.is_array() && v.size() >= 2 && v.at(0).is_number());
}

std::optional<Layout> read_layout(const json& doc, const json& targets, const json& depots) {
  if (targets.empty() || depots.empty()) return std::nullopt;
  if (!std::all_of(targets.begin(), targets.end(), is_pose) ||
      !std::all_of(depots.begin(), depots.end(), is_pose))
    return std::nullopt;
  Layout layout;
  for (const auto& t : targets) layout.targets.push_back(pose_from_json(t));
  for (const auto& d : depots) layout.depots.push_back(pose_from_json(d));
  layout.turn_radius = doc.value("turn_radius", 0.0);
  const std::string metric = doc.value("metric", layout.turn_radius > 0.0 ? "dubins" : "euclidean");
  if (metric == "dubins")
    layout.metric = Metric::Dubins;
  else if (metric == "euclidean")
    layout.metric = Metric::Euclidean;
  else
    throw std::runtime_error("unknown metric '" + metric + "'");
  return layout;
}

}  // namespace

Instance instance_from_json(const json& doc) {
  const json& targets = doc.contains("poses") ? doc.at("poses").at("targets") : doc.at("targets");
  const json& depots = doc.contains("poses") ? doc.at("poses").at("depots") : doc.at("depots");
  const int nt = static_cast<int>(targets.size());
  const int nd = static_cast<int>(depots.size());
  const double capacity = doc.at("capacity").get<double>();
  const int start = doc.value("start", 0);
  std::optional<Layout> layout = read_layout(doc, targets, depots);

  Eigen::MatrixXd fuel;
  if (doc.contains("fuel")) {
    const json& rows = doc.at("fuel");
    const auto n = static_cast<Eigen::Index>(rows.size());
    fuel.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != n)
        throw std::runtime_error("fuel matrix is not square");
      for (Eigen::Index j = 0; j < n; ++j) fuel(i, j) = rows[i][j].get<double>();
    }
  } else {
    if (!layout) throw std::runtime_error("instance needs either \"fuel\" or poses");
    if (layout->metric == Metric::Dubins) {
      if (!(layout->turn_radius > 0.0))
        throw std::runtime_error("dubins metric needs a positive turn_radius");
      fuel = fuel_matrix_from_poses(layout->targets, layout->depots, layout->turn_radius);
    } else {
      fuel = euclidean_fuel_matrix(layout->targets, layout->depots);
    }
  }
  return Instance(nt, nd, start, std::move(fuel), capacity, std::move(layout));
}

json instance_to_json(const Instance& instance) {
  json doc;
  doc["capacity"] = instance.capacity();
  doc["start"] = instance.start_depot();
  json targets = json::array();
  json depots = json::array();
  if (const auto& layout = instance.layout()) {
    for (const auto& p : layout->targets) targets.push_back(pose_to_json(p));
    for (const auto& p : layout->depots) depots.push_back(pose_to_json(p));
    doc["metric"] = layout->metric == Metric::Dubins ? "dubins" : "euclidean";
    doc["turn_radius"] = layout->turn_radius;
  } else {
    for (int i = 0; i < instance.num_targets(); ++i) targets.push_back(i);
    for (int d = 0; d < instance.num_depots(); ++d) depots.push_back(d);
  }
  doc["targets"] = std::move(targets);
  doc["depots"] = std::move(depots);
  json rows = json::array();
  const Eigen::MatrixXd& f = instance.fuel_matrix();
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < f.cols(); ++j) row.push_back(f(i, j));
    rows.push_back(std::move(row));
  }
  doc["fuel"] = std::move(rows);
  return doc;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return instance_from_json(json::parse(in));
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(instance).dump(1) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace fcurp
