#include "anyforest/routing.hpp"

#include "anyforest/error.hpp"

namespace anyforest {

namespace {

std::size_t count_correct(std::span<const Score> sums, std::span<const std::size_t> labels,
                          std::size_t n_classes) {
  std::size_t correct = 0;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    correct += argmax(sums.subspan(s * n_classes, n_classes)) == labels[s];
  }
  return correct;
}

}  // namespace

LatticeShape::LatticeShape(std::vector<int> budgets) : budgets_(std::move(budgets)) {
  strides_.reserve(budgets_.size());
  for (int b : budgets_) {
    if (b < 0) throw StructuralError("negative step budget");
    strides_.push_back(state_count_);
    total_steps_ += static_cast<std::size_t>(b);
    const auto radix = static_cast<std::uint64_t>(b) + 1;
    if (state_count_ > UINT64_MAX / radix) {
      state_count_ = UINT64_MAX;
    } else if (state_count_ != UINT64_MAX) {
      state_count_ *= radix;
    }
  }
}

bool LatticeShape::contains(const LatticeState& state) const noexcept {
  if (state.counters.size() != budgets_.size()) return false;
  for (std::size_t i = 0; i < budgets_.size(); ++i) {
    if (state.counters[i] < 0 || state.counters[i] > budgets_[i]) return false;
  }
  return true;
}

std::uint64_t LatticeShape::encode(const LatticeState& state) const {
  if (!contains(state)) throw StructuralError("lattice state outside the step budgets");
  if (state_count_ == UINT64_MAX) throw StructuralError("lattice too large to index");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < budgets_.size(); ++i) {
    index += static_cast<std::uint64_t>(state.counters[i]) * strides_[i];
  }
  return index;
}

LatticeState LatticeShape::decode(std::uint64_t index) const {
  if (index >= state_count_) throw StructuralError("lattice index out of range");
  LatticeState state;
  state.counters.resize(budgets_.size());
  for (std::size_t i = 0; i < budgets_.size(); ++i) {
    const auto radix = static_cast<std::uint64_t>(budgets_[i]) + 1;
    state.counters[i] = static_cast<int>(index % radix);
    index /= radix;
  }
  return state;
}

RoutingTable::RoutingTable(const Forest& forest, const Dataset& samples)
    : n_classes_(forest.n_classes()), budgets_(forest.budgets()), labels_(samples.labels()) {
  if (samples.empty()) throw DataError("sample set is empty");
  if (samples.n_features() != forest.n_features()) {
    throw DataError("samples have " + std::to_string(samples.n_features()) +
                    " features, forest expects " + std::to_string(forest.n_features()));
  }
  for (std::size_t y : labels_) {
    if (y >= n_classes_) throw DataError("sample label outside the forest's classes");
  }
  const auto n = samples.size();
  std::size_t blocks = 0;
  for (int b : budgets_) {
    offsets_.push_back(blocks);
    blocks += static_cast<std::size_t>(b) + 1;
  }
  nodes_.resize(blocks * n);
  scores_.resize(blocks * n * n_classes_);
  for (std::size_t t = 0; t < forest.n_trees(); ++t) {
    const Tree& tree = forest.tree(t);
    for (std::size_t s = 0; s < n; ++s) {
      const auto row = samples.row(s);
      NodeIndex id = 0;
      for (int depth = 0; depth <= budgets_[t]; ++depth) {
        if (depth > 0) id = tree.step_unchecked(id, row);
        const auto b = block(t, depth);
        nodes_[b * n + s] = id;
        const auto src = tree.scores(id);
        std::copy(src.begin(), src.end(), scores_.begin() + static_cast<long>((b * n + s) * n_classes_));
      }
    }
  }
}

std::size_t correct_count(const RoutingTable& routing, const LatticeState& state) {
  if (!LatticeShape(routing.budgets()).contains(state)) {
    throw StructuralError("lattice state outside the step budgets");
  }
  const auto width = routing.n_samples() * routing.n_classes();
  std::vector<Score> sums(width, 0);
  for (std::size_t t = 0; t < routing.n_trees(); ++t) {
    const auto block = routing.scores(t, state.counters[t]);
    for (std::size_t k = 0; k < width; ++k) sums[k] += block[k];
  }
  return count_correct(sums, routing.labels(), routing.n_classes());
}

double state_accuracy(const RoutingTable& routing, const LatticeState& state) {
  return static_cast<double>(correct_count(routing, state)) /
         static_cast<double>(routing.n_samples());
}

std::vector<std::size_t> path_correct_counts(const RoutingTable& routing,
                                             const StepOrder& order) {
  validate(order);
  if (order.budgets != routing.budgets()) {
    throw StructuralError("step order budgets do not match the forest");
  }
  StateEvaluator eval(routing);
  std::vector<std::size_t> out;
  out.reserve(order.steps.size() + 1);
  out.push_back(eval.correct());
  for (std::size_t tree : order.steps) {
    eval.set(tree, eval.state().counters[tree] + 1);
    out.push_back(eval.correct());
  }
  return out;
}

std::uint64_t path_correct_total(const RoutingTable& routing, const StepOrder& order) {
  std::uint64_t total = 0;
  for (auto c : path_correct_counts(routing, order)) total += c;
  return total;
}

double mean_accuracy(const RoutingTable& routing, const StepOrder& order) {
  const auto total = path_correct_total(routing, order);
  return static_cast<double>(total) /
         (static_cast<double>(order.steps.size() + 1) * static_cast<double>(routing.n_samples()));
}

StateEvaluator::StateEvaluator(const RoutingTable& routing) : routing_(routing) {
  reset();
}

void StateEvaluator::reset() {
  state_.counters.assign(routing_.n_trees(), 0);
  sums_.assign(routing_.n_samples() * routing_.n_classes(), 0);
  for (std::size_t t = 0; t < routing_.n_trees(); ++t) {
    const auto block = routing_.scores(t, 0);
    for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += block[k];
  }
}

void StateEvaluator::set(std::size_t tree, int depth) {
  int& current = state_.counters.at(tree);
  if (depth < 0 || depth > routing_.budgets()[tree]) {
    throw StructuralError("depth outside the tree's step budget");
  }
  if (depth == current) return;
  const auto before = routing_.scores(tree, current);
  const auto after = routing_.scores(tree, depth);
  for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += after[k] - before[k];
  current = depth;
}

std::size_t StateEvaluator::correct() const {
  return count_correct(sums_, routing_.labels(), routing_.n_classes());
}

std::size_t StateEvaluator::correct_if(std::size_t tree, int depth) const {
  if (depth < 0 || depth > routing_.budgets().at(tree)) {
    throw StructuralError("depth outside the tree's step budget");
  }
  const auto c = routing_.n_classes();
  const auto before = routing_.scores(tree, state_.counters.at(tree));
  const auto after = routing_.scores(tree, depth);
  const auto& labels = routing_.labels();
  std::size_t correct = 0;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    std::size_t best = 0;
    Score best_score = 0;
    for (std::size_t k = 0; k < c; ++k) {
      const auto i = s * c + k;
      const Score v = sums_[i] - before[i] + after[i];
      if (k == 0 || v > best_score) {
        best = k;
        best_score = v;
      }
    }
    correct += best == labels[s];
  }
  return correct;
}

}  // namespace anyforest
