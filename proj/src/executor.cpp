#include "anyforest/executor.hpp"

#include <algorithm>

#include "anyforest/error.hpp"

namespace anyforest {

void check_order_matches(const Forest& forest, const StepOrder& order) {
  validate(order);
  if (order.budgets != forest.budgets()) {
    throw StructuralError("step order budgets do not match the forest's tree depths");
  }
}

AnytimeExecutor::AnytimeExecutor(const Forest& forest, const StepOrder& order)
    : forest_(forest), order_(order), state_(initial_state(forest)) {
  check_order_matches(forest, order);
}

void AnytimeExecutor::reset(std::span<const double> sample) {
  if (sample.size() != forest_.n_features()) {
    throw DataError("sample has " + std::to_string(sample.size()) +
                    " features, forest expects " + std::to_string(forest_.n_features()));
  }
  sample_ = sample;
  position_ = 0;
  std::fill(state_.node_index.begin(), state_.node_index.end(), 0);
  std::fill(state_.steps_taken.begin(), state_.steps_taken.end(), 0);
  sums_.assign(forest_.n_classes(), 0);
  for (const Tree& tree : forest_.trees()) {
    const auto s = tree.scores(0);
    for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += s[k];
  }
}

bool AnytimeExecutor::step() noexcept {
  if (position_ == order_.steps.size()) return false;
  const std::size_t t = order_.steps[position_++];
  const Tree& tree = forest_.trees()[t];
  NodeIndex& current = state_.node_index[t];
  ++state_.steps_taken[t];
  const NodeIndex next = tree.step_unchecked(current, sample_);
  if (next != current) {
    const auto before = tree.scores(current);
    const auto after = tree.scores(next);
    for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += after[k] - before[k];
    current = next;
  }
  return true;
}

ExecutionResult execute(const Forest& forest, const StepOrder& order,
                        std::span<const double> sample, std::size_t abort_after) {
  if (abort_after > order.steps.size()) {
    throw StructuralError("abort point " + std::to_string(abort_after) + " beyond the " +
                          std::to_string(order.steps.size()) + " steps of the order");
  }
  AnytimeExecutor exec(forest, order);
  exec.reset(sample);
  while (exec.steps_done() < abort_after) exec.step();
  return {exec.predict(), exec.state()};
}

BudgetedResult execute_with_budget(const Forest& forest, const StepOrder& order,
                                   std::span<const double> sample,
                                   std::chrono::nanoseconds budget) {
  if (budget.count() < 0) throw ConfigError("time budget must not be negative");
  AnytimeExecutor exec(forest, order);
  exec.reset(sample);
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + budget;
  while (!exec.finished() && Clock::now() < deadline) exec.step();
  return {exec.predict(), exec.steps_done()};
}

std::vector<std::size_t> execute_batch(const Forest& forest, const StepOrder& order,
                                       std::span<const std::vector<double>> samples,
                                       std::size_t abort_after) {
  if (abort_after > order.steps.size()) {
    throw StructuralError("abort point beyond the end of the order");
  }
  AnytimeExecutor exec(forest, order);
  std::vector<std::size_t> out;
  out.reserve(samples.size());
  for (const auto& sample : samples) {
    exec.reset(sample);
    while (exec.steps_done() < abort_after) exec.step();
    out.push_back(exec.predict());
  }
  return out;
}

}  // namespace anyforest
