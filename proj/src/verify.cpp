#include "fcurp/verify.hpp"

#include <sstream>

namespace fcurp {

Verification verify(const Instance& instance, std::span<const Vertex> tour) {
  if (tour.size() < 2 || tour.front() != instance.start() || tour.back() != instance.start())
    throw MalformedTour("tour must start and end at " + instance.label(instance.start()));
  for (Vertex v : tour)
    if (!instance.contains(v)) throw MalformedTour("unknown vertex " + std::to_string(v));

  Verification out;
  const double L = instance.capacity();
  std::vector<bool> seen(instance.num_targets(), false);
  double fuel = L;
  out.trace.levels.reserve(tour.size());
  out.trace.levels.push_back(fuel);
  for (std::size_t i = 1; i < tour.size(); ++i) {
    const double f = instance.fuel(tour[i - 1], tour[i]);
    out.cost += f;
    fuel -= f;
    if (fuel < -kTolerance && !out.violation) {
      out.violation = i;
      std::ostringstream os;
      os << "fuel " << fuel << " on arrival at " << instance.label(tour[i]) << " (position " << i
         << ")";
      out.reason = os.str();
    }
    if (instance.is_depot(tour[i]))
      fuel = L;
    else
      seen[tour[i]] = true;
    out.trace.levels.push_back(fuel);
  }
  for (int t = 0; t < instance.num_targets(); ++t)
    if (!seen[t]) out.missing_targets.push_back(t);
  if (!out.missing_targets.empty() && out.reason.empty())
    out.reason = "target " + instance.label(out.missing_targets.front()) + " not visited";
  out.feasible = !out.violation && out.missing_targets.empty();
  return out;
}

double quality(double cost_alg, double cost_ref) {
  if (!(cost_ref > 0.0)) throw std::domain_error("reference cost must be positive");
  return 100.0 * (cost_alg - cost_ref) / cost_ref;
}

}  // namespace fcurp
