#include "fcurp/tour.hpp"

namespace fcurp {

double sequence_cost(const Instance& instance, std::span<const Vertex> sequence) {
  double cost = 0.0;
  for (std::size_t i = 1; i < sequence.size(); ++i)
    cost += instance.fuel(sequence[i - 1], sequence[i]);
  return cost;
}

Tour Tour::from_sequence(const Instance& instance, std::vector<Vertex> sequence) {
  Tour t;
  t.cost = sequence_cost(instance, sequence);
  t.sequence = std::move(sequence);
  return t;
}

}  // namespace fcurp
