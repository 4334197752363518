#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace anyforest {

using NodeIndex = std::int32_t;
inline constexpr NodeIndex kNoChild = -1;

// Class scores are accumulated in 64-bit fixed point so that a sum of
// prediction vectors does not depend on the order it was accumulated in.
// Every argmax in the library (full inference, anytime prediction, lattice
// state accuracy) goes through these integers.
using Score = std::int64_t;
inline constexpr int kScoreFractionBits = 40;
inline constexpr Score kScoreOne = Score{1} << kScoreFractionBits;

Score to_score(double probability);

// Index of the largest entry; ties resolve to the lowest index.
std::size_t argmax(std::span<const Score> scores);

struct Node {
  std::int32_t feature = -1;
  double threshold = 0.0;
  NodeIndex left = kNoChild;
  NodeIndex right = kNoChild;
  // Empirical class distribution of the training samples reaching the node.
  // Inner nodes carry one as well, which is what makes early abort useful.
  std::vector<double> prediction;
  std::uint64_t count = 0;

  bool is_leaf() const noexcept { return left == kNoChild && right == kNoChild; }
};

// A decision tree stored as a flat node array, root at index 0.
//
// The constructor validates the structure (single root, every non-root node
// has exactly one parent, no cycles, children in range), the prediction
// vectors (length, non-negative, sum to 1 within 1e-9) and sample-count
// conservation at inner nodes. Violations throw StructuralError.
class Tree {
 public:
  Tree(std::vector<Node> nodes, std::size_t n_classes, std::size_t n_features);

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t n_classes() const noexcept { return n_classes_; }

  const Node& node(NodeIndex id) const;

  // Longest root-to-leaf path in edges. This is the tree's step budget.
  int max_depth_steps() const noexcept { return max_depth_; }

  // Depth of every node, in edges from the root.
  int depth_of(NodeIndex id) const;

  std::span<const Score> scores(NodeIndex id) const noexcept {
    return {scores_.data() + static_cast<std::size_t>(id) * n_classes_,
            n_classes_};
  }

  // One split evaluation. Unchecked: `id` must be valid and `sample` long
  // enough. Leaves return themselves.
  NodeIndex step_unchecked(NodeIndex id,
                           std::span<const double> sample) const noexcept {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.left == kNoChild) return id;
    return sample[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                      : n.right;
  }

  friend bool operator==(const Tree& a, const Tree& b);

 private:
  std::vector<Node> nodes_;
  std::size_t n_classes_;
  std::vector<Score> scores_;
  std::vector<int> depth_;
  int max_depth_ = 0;
};

bool operator==(const Node& a, const Node& b);

class Forest {
 public:
  Forest(std::vector<Tree> trees, std::size_t n_classes, std::size_t n_features,
         std::vector<std::string> class_labels);

  const std::vector<Tree>& trees() const noexcept { return trees_; }
  const Tree& tree(std::size_t i) const { return trees_.at(i); }
  std::size_t n_trees() const noexcept { return trees_.size(); }
  std::size_t n_classes() const noexcept { return n_classes_; }
  std::size_t n_features() const noexcept { return n_features_; }
  const std::vector<std::string>& class_labels() const noexcept {
    return class_labels_;
  }

  // Per-tree step budgets (each tree's max_depth_steps).
  std::vector<int> budgets() const;
  // Maximum over trees of max_depth_steps.
  int max_depth() const;

  friend bool operator==(const Forest& a, const Forest& b) = default;

 private:
  std::vector<Tree> trees_;
  std::size_t n_classes_;
  std::size_t n_features_;
  std::vector<std::string> class_labels_;
};

// Per-tree inference position: the index array of a native-tree anytime
// implementation plus the number of steps taken in each tree.
struct AnytimeState {
  std::vector<NodeIndex> node_index;
  std::vector<int> steps_taken;

  friend bool operator==(const AnytimeState&, const AnytimeState&) = default;
};

AnytimeState initial_state(const Forest& forest);

// Throws StructuralError if `state` does not describe a reachable position.
void validate_state(const Forest& forest, const AnytimeState& state);

struct Prediction {
  std::size_t label = 0;
  // Element-wise sum of the current nodes' prediction vectors.
  std::vector<double> sums;
};

// Next node for `sample`: left child when sample[feature] <= threshold, right
// child otherwise, unchanged on leaves.
NodeIndex tree_step(const Tree& tree, NodeIndex node_id,
                    std::span<const double> sample);

Prediction combined_prediction(const Forest& forest, const AnytimeState& state);

// Routes the sample to a leaf in every tree and returns the argmax class of
// the summed leaf vectors.
std::size_t full_inference(const Forest& forest, std::span<const double> sample);

}  // namespace anyforest
