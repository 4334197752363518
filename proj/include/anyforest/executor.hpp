#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <vector>

#include "anyforest/forest.hpp"
#include "anyforest/step_order.hpp"

namespace anyforest {

// Runs one sample through a forest along a fixed step order. Holds the index
// array and the running class-score sum, so the prediction after any step is
// O(n_classes). Not thread-safe; use one executor per in-flight sample. The
// forest and the order must outlive the executor.
class AnytimeExecutor {
 public:
  // Throws StructuralError if the order's budgets do not match the forest.
  AnytimeExecutor(const Forest& forest, const StepOrder& order);

  // Starts a new inference at the roots. Throws DataError on a dimension
  // mismatch. The sample must stay alive until the next reset.
  void reset(std::span<const double> sample);

  // Executes the next step of the order; false once all steps are done.
  bool step() noexcept;
  std::size_t steps_done() const noexcept { return position_; }
  std::size_t total_steps() const noexcept { return order_.steps.size(); }
  bool finished() const noexcept { return position_ == order_.steps.size(); }

  std::size_t predict() const noexcept { return argmax(sums_); }
  const AnytimeState& state() const noexcept { return state_; }

 private:
  const Forest& forest_;
  const StepOrder& order_;
  std::span<const double> sample_;
  AnytimeState state_;
  std::vector<Score> sums_;
  std::size_t position_ = 0;
};

struct ExecutionResult {
  std::size_t label = 0;
  AnytimeState state;
};

// Prediction after the first `abort_after` steps (0 = all roots, K = full
// inference).
ExecutionResult execute(const Forest& forest, const StepOrder& order,
                        std::span<const double> sample, std::size_t abort_after);

struct BudgetedResult {
  std::size_t label = 0;
  std::size_t steps = 0;
};

// Takes steps until the deadline is observed. The clock is read before every
// step; a step that has started always completes. Throws ConfigError for a
// negative budget.
BudgetedResult execute_with_budget(const Forest& forest, const StepOrder& order,
                                   std::span<const double> sample,
                                   std::chrono::nanoseconds budget);

std::vector<std::size_t> execute_batch(const Forest& forest, const StepOrder& order,
                                       std::span<const std::vector<double>> samples,
                                       std::size_t abort_after);

// Checks that `order` fits `forest`: one budget per tree, equal to the tree's
// max_depth_steps. Throws StructuralError.
void check_order_matches(const Forest& forest, const StepOrder& order);

}  // namespace anyforest
