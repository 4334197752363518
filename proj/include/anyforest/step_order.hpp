#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace anyforest {

// Global execution schedule: entry k names the tree that takes step k. Tree i
// appears exactly budgets[i] times.
struct StepOrder {
  std::vector<int> budgets;
  std::vector<std::size_t> steps;

  std::size_t total_steps() const noexcept { return steps.size(); }

  friend bool operator==(const StepOrder&, const StepOrder&) = default;
};

// Throws StructuralError if the multiset invariant does not hold.
void validate(const StepOrder& order);
bool is_valid(const StepOrder& order) noexcept;

// Tree sequence used by the depth- and breadth-first orders: a permutation of
// 0..t-1.
using TreeSequence = std::vector<std::size_t>;

// budgets[s0] steps of s0, then budgets[s1] steps of s1, ...
StepOrder depth_order(const TreeSequence& sequence, std::span<const int> budgets);
// Round-robin over the sequence, layer by layer, skipping exhausted trees.
StepOrder breadth_order(const TreeSequence& sequence, std::span<const int> budgets);
// Seeded uniform shuffle of the step multiset.
StepOrder random_order(std::span<const int> budgets, std::uint64_t seed);

// Number of distinct orders, (sum b)! / prod(b_i!), saturating at UINT64_MAX.
std::uint64_t count_orders(std::span<const int> budgets);

// Walks every distinct multiset permutation exactly once, in lexicographic
// order of the step sequence.
//
//   OrderEnumerator orders(budgets);
//   do { use(orders.current()); } while (orders.advance());
class OrderEnumerator {
 public:
  static constexpr std::uint64_t kDefaultLimit = 1'000'000;

  // Throws ConfigError if count_orders(budgets) exceeds `limit`.
  explicit OrderEnumerator(std::vector<int> budgets,
                           std::uint64_t limit = kDefaultLimit);

  const StepOrder& current() const noexcept { return current_; }
  // Moves to the next order; false once every order has been produced.
  bool advance();

 private:
  StepOrder current_;
};

std::vector<StepOrder> enumerate_all_orders(std::span<const int> budgets,
                                            std::uint64_t limit = OrderEnumerator::kDefaultLimit);

// Step-order text file:
//   budgets: b0 b1 ... b(t-1)
//   steps: i0 i1 ... i(K-1)
std::string format_step_order(const StepOrder& order);
StepOrder parse_step_order(const std::string& text);
void save_step_order(const StepOrder& order, const std::filesystem::path& path);
StepOrder load_step_order(const std::filesystem::path& path);

}  // namespace anyforest
