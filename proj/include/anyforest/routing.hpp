#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "anyforest/dataset.hpp"
#include "anyforest/forest.hpp"
#include "anyforest/step_order.hpp"

namespace anyforest {

// Vertex of the step lattice: steps taken per tree.
struct LatticeState {
  std::vector<int> counters;

  friend bool operator==(const LatticeState&, const LatticeState&) = default;
};

// Mixed-radix layout of the lattice (radix budget_i + 1, tree 0 least
// significant). Every successor of a state has a larger index, so index
// order is a topological order.
class LatticeShape {
 public:
  explicit LatticeShape(std::vector<int> budgets);

  const std::vector<int>& budgets() const noexcept { return budgets_; }
  std::size_t n_trees() const noexcept { return budgets_.size(); }
  // prod(budget_i + 1), saturating at UINT64_MAX.
  std::uint64_t state_count() const noexcept { return state_count_; }
  std::uint64_t stride(std::size_t tree) const { return strides_.at(tree); }
  std::size_t total_steps() const noexcept { return total_steps_; }

  std::uint64_t encode(const LatticeState& state) const;
  LatticeState decode(std::uint64_t index) const;
  bool contains(const LatticeState& state) const noexcept;

 private:
  std::vector<int> budgets_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t state_count_ = 1;
  std::size_t total_steps_ = 0;
};

// Node occupied by every sample in every tree after 0..budget_i steps, with
// the matching fixed-point class scores laid out contiguously. Built once per
// (forest, sample set); afterwards a state's accuracy is a pure lookup-and-sum.
class RoutingTable {
 public:
  // Throws DataError for an empty sample set or a feature-count mismatch.
  RoutingTable(const Forest& forest, const Dataset& samples);

  std::size_t n_samples() const noexcept { return labels_.size(); }
  std::size_t n_trees() const noexcept { return budgets_.size(); }
  std::size_t n_classes() const noexcept { return n_classes_; }
  const std::vector<int>& budgets() const noexcept { return budgets_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }

  NodeIndex node(std::size_t tree, int depth, std::size_t sample) const {
    return nodes_[block(tree, depth) * n_samples() + sample];
  }

  // Scores of all samples for `tree` after `depth` steps: [sample][class].
  std::span<const Score> scores(std::size_t tree, int depth) const {
    const auto stride = n_samples() * n_classes_;
    return {scores_.data() + block(tree, depth) * stride, stride};
  }

  std::span<const Score> scores(std::size_t tree, int depth, std::size_t sample) const {
    return scores(tree, depth).subspan(sample * n_classes_, n_classes_);
  }

 private:
  std::size_t block(std::size_t tree, int depth) const {
    return offsets_[tree] + static_cast<std::size_t>(depth);
  }

  std::size_t n_classes_;
  std::vector<int> budgets_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> labels_;
  std::vector<NodeIndex> nodes_;
  std::vector<Score> scores_;
};

// Number of samples classified correctly in `state`. Throws StructuralError
// if the state lies outside the budgets.
std::size_t correct_count(const RoutingTable& routing, const LatticeState& state);
double state_accuracy(const RoutingTable& routing, const LatticeState& state);

// Correct counts of the K+1 states visited by `order`, starting with the
// all-zero state.
std::vector<std::size_t> path_correct_counts(const RoutingTable& routing,
                                             const StepOrder& order);
// Sum of path_correct_counts.
std::uint64_t path_correct_total(const RoutingTable& routing, const StepOrder& order);
// Average state accuracy over the K+1 visited states.
double mean_accuracy(const RoutingTable& routing, const StepOrder& order);

// Per-sample running score sums for one lattice state, updated one tree at a
// time. Shared by the greedy and exhaustive generators.
class StateEvaluator {
 public:
  explicit StateEvaluator(const RoutingTable& routing);

  const LatticeState& state() const noexcept { return state_; }
  void set(std::size_t tree, int depth);
  void reset();

  std::size_t correct() const;
  // Correct count if `tree` were at `depth`, without changing the state.
  std::size_t correct_if(std::size_t tree, int depth) const;

 private:
  const RoutingTable& routing_;
  LatticeState state_;
  std::vector<Score> sums_;
};

}  // namespace anyforest
