#include "anyforest/lattice.hpp"

#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

#include "anyforest/error.hpp"

namespace anyforest {

namespace {

LatticeShape checked_shape(const RoutingTable& routing, const LatticeOptions& options) {
  LatticeShape shape(routing.budgets());
  if (shape.state_count() > options.cap) {
    throw LatticeCapExceeded(shape.state_count(), options.cap);
  }
  return shape;
}

// cost[s] on entry: correct count of state s. On exit: summed path cost from
// s (inclusive) to the final state along the best continuation, where a
// state's cost is its wrong count (optimum) or correct count (pessimum).
template <typename Cost>
LatticeResult solve(const RoutingTable& routing, const LatticeShape& shape,
                    Objective objective) {
  const std::uint64_t n_states = shape.state_count();
  const std::size_t n_trees = shape.n_trees();
  const auto& budgets = shape.budgets();
  const auto n_samples = static_cast<Cost>(routing.n_samples());

  std::vector<Cost> cost(n_states);
  {
    StateEvaluator eval(routing);
    std::vector<int> counters(n_trees, 0);
    for (std::uint64_t s = 0; s < n_states; ++s) {
      cost[s] = static_cast<Cost>(eval.correct());
      // Odometer increment, tree 0 least significant.
      for (std::size_t i = 0; i < n_trees; ++i) {
        if (counters[i] < budgets[i]) {
          eval.set(i, ++counters[i]);
          break;
        }
        counters[i] = 0;
        eval.set(i, 0);
      }
    }
  }

  const bool maximize = objective == Objective::kMaximizeMeanAccuracy;
  auto state_cost = [&](Cost correct) { return maximize ? n_samples - correct : correct; };

  std::vector<int> counters(budgets.begin(), budgets.end());
  for (std::uint64_t s = n_states; s-- > 0;) {
    Cost best = std::numeric_limits<Cost>::max();
    for (std::size_t i = 0; i < n_trees; ++i) {
      if (counters[i] < budgets[i]) best = std::min(best, cost[s + shape.stride(i)]);
    }
    if (best == std::numeric_limits<Cost>::max()) best = 0;  // final state
    cost[s] = state_cost(cost[s]) + best;
    // Odometer decrement.
    for (std::size_t i = 0; i < n_trees; ++i) {
      if (counters[i] > 0) {
        --counters[i];
        break;
      }
      counters[i] = budgets[i];
    }
  }

  LatticeResult result;
  result.states = n_states;
  result.order.budgets = budgets;
  std::fill(counters.begin(), counters.end(), 0);
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < shape.total_steps(); ++k) {
    std::size_t pick = n_trees;
    for (std::size_t i = 0; i < n_trees; ++i) {
      if (counters[i] < budgets[i] &&
          (pick == n_trees || cost[s + shape.stride(i)] < cost[s + shape.stride(pick)])) {
        pick = i;
      }
    }
    result.order.steps.push_back(pick);
    ++counters[pick];
    s += shape.stride(pick);
  }

  const auto k_plus_one = static_cast<std::uint64_t>(shape.total_steps()) + 1;
  const auto total = static_cast<std::uint64_t>(cost[0]);
  result.path_correct = maximize ? k_plus_one * routing.n_samples() - total : total;
  return result;
}

}  // namespace

LatticeResult search_lattice(const RoutingTable& routing, Objective objective,
                             const LatticeOptions& options) {
  const LatticeShape shape = checked_shape(routing, options);
  const auto bound = (static_cast<std::uint64_t>(shape.total_steps()) + 1) *
                     static_cast<std::uint64_t>(routing.n_samples());
  if (bound < std::numeric_limits<std::uint32_t>::max()) {
    return solve<std::uint32_t>(routing, shape, objective);
  }
  return solve<std::uint64_t>(routing, shape, objective);
}

StepOrder optimal_order(const RoutingTable& routing, const LatticeOptions& options) {
  return search_lattice(routing, Objective::kMaximizeMeanAccuracy, options).order;
}

StepOrder unoptimal_order(const RoutingTable& routing, const LatticeOptions& options) {
  return search_lattice(routing, Objective::kMinimizeMeanAccuracy, options).order;
}

LatticeResult dijkstra_lattice(const RoutingTable& routing, Objective objective,
                               const LatticeOptions& options) {
  const LatticeShape shape = checked_shape(routing, options);
  const bool maximize = objective == Objective::kMaximizeMeanAccuracy;
  const auto n_samples = routing.n_samples();
  auto weight = [&](std::uint64_t index) -> std::uint64_t {
    const auto correct = correct_count(routing, shape.decode(index));
    return maximize ? n_samples - correct : correct;
  };

  struct Label {
    std::uint64_t distance;
    std::uint64_t parent;
    bool settled;
  };
  using Entry = std::pair<std::uint64_t, std::uint64_t>;  // (distance, state)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::unordered_map<std::uint64_t, Label> labels;

  const std::uint64_t target = shape.state_count() - 1;
  labels[0] = {0, 0, false};
  frontier.push({0, 0});
  while (!frontier.empty()) {
    const auto [distance, index] = frontier.top();
    frontier.pop();
    Label& label = labels.at(index);
    if (label.settled || distance != label.distance) continue;
    label.settled = true;
    if (index == target) break;
    const LatticeState state = shape.decode(index);
    for (std::size_t i = 0; i < shape.n_trees(); ++i) {
      if (state.counters[i] >= shape.budgets()[i]) continue;
      const std::uint64_t next = index + shape.stride(i);
      const std::uint64_t candidate = distance + weight(next);
      auto [it, inserted] = labels.try_emplace(next, Label{candidate, index, false});
      if (!inserted) {
        if (it->second.settled || it->second.distance <= candidate) continue;
        it->second.distance = candidate;
        it->second.parent = index;
      }
      frontier.push({candidate, next});
    }
  }

  LatticeResult result;
  result.states = labels.size();
  result.order.budgets = shape.budgets();
  std::vector<std::size_t> reversed;
  for (std::uint64_t index = target; index != 0;) {
    const std::uint64_t parent = labels.at(index).parent;
    const std::uint64_t delta = index - parent;
    for (std::size_t i = 0; i < shape.n_trees(); ++i) {
      if (shape.budgets()[i] > 0 && shape.stride(i) == delta) {
        reversed.push_back(i);
        break;
      }
    }
    index = parent;
  }
  result.order.steps.assign(reversed.rbegin(), reversed.rend());

  const auto start = weight(0);
  const auto path = labels.at(target).distance + start;
  const auto k_plus_one = static_cast<std::uint64_t>(shape.total_steps()) + 1;
  result.path_correct = maximize ? k_plus_one * n_samples - path : path;
  return result;
}

}  // namespace anyforest
