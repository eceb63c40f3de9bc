#pragma once

#include <filesystem>

#include <json.hpp>

#include "fcurp/instance.hpp"

namespace fcurp {

/// Reads either the matrix form {"capacity", "start", "targets", "depots", "fuel"}
/// or the pose form (targets/depots given as poses plus "turn_radius"), in which
/// case the fuel matrix is computed. Matrix order is targets first, then depots.
Instance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const Instance& instance);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

nlohmann::json pose_to_json(const Pose& pose);
Pose pose_from_json(const nlohmann::json& doc);

}  // namespace fcurp
