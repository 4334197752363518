#include "anyforest/squirrel.hpp"

#include <algorithm>

namespace anyforest {

SquirrelResult forward_squirrel(const RoutingTable& routing) {
  const auto& budgets = routing.budgets();
  StateEvaluator eval(routing);
  SquirrelResult result;
  result.order.budgets = budgets;
  const auto k = LatticeShape(budgets).total_steps();
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = budgets.size();
    std::size_t pick_correct = 0;
    for (std::size_t i = 0; i < budgets.size(); ++i) {
      const int depth = eval.state().counters[i];
      if (depth >= budgets[i]) continue;
      const auto correct = eval.correct_if(i, depth + 1);
      ++result.evaluations;
      if (pick == budgets.size() || correct > pick_correct) {
        pick = i;
        pick_correct = correct;
      }
    }
    eval.set(pick, eval.state().counters[pick] + 1);
    result.order.steps.push_back(pick);
  }
  return result;
}

SquirrelResult backward_squirrel(const RoutingTable& routing) {
  const auto& budgets = routing.budgets();
  StateEvaluator eval(routing);
  for (std::size_t i = 0; i < budgets.size(); ++i) eval.set(i, budgets[i]);
  SquirrelResult result;
  result.order.budgets = budgets;
  const auto k = LatticeShape(budgets).total_steps();
  std::vector<std::size_t> reversed;
  reversed.reserve(k);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = budgets.size();
    std::size_t pick_correct = 0;
    for (std::size_t i = 0; i < budgets.size(); ++i) {
      const int depth = eval.state().counters[i];
      if (depth == 0) continue;
      const auto correct = eval.correct_if(i, depth - 1);
      ++result.evaluations;
      if (pick == budgets.size() || correct > pick_correct) {
        pick = i;
        pick_correct = correct;
      }
    }
    eval.set(pick, eval.state().counters[pick] - 1);
    reversed.push_back(pick);
  }
  result.order.steps.assign(reversed.rbegin(), reversed.rend());
  return result;
}

}  // namespace anyforest
