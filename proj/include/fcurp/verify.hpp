#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcurp/instance.hpp"

namespace fcurp {

class MalformedTour : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fuel on arrival at each tour position; depots read L after refuelling.
struct FuelTrace {
  std::vector<double> levels;
};

struct Verification {
  bool feasible = false;
  double cost = 0.0;
  FuelTrace trace;
  /// First tour position where fuel went below -eps.
  std::optional<std::size_t> violation;
  std::vector<Vertex> missing_targets;
  std::string reason;
};

/// Single referee for every solver: fuel simulation plus target coverage.
/// Throws MalformedTour if the tour does not start and end at the start depot or
/// names an unknown vertex.
Verification verify(const Instance& instance, std::span<const Vertex> tour);

/// 100 * (cost_alg - cost_ref) / cost_ref. Throws std::domain_error when cost_ref <= 0.
double quality(double cost_alg, double cost_ref);

}  // namespace fcurp
