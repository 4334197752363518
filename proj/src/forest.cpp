#include "anyforest/forest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anyforest/error.hpp"

namespace anyforest {

namespace {

constexpr double kProbabilityTolerance = 1e-9;

std::string node_context(std::size_t id) {
  return "node " + std::to_string(id) + ": ";
}

}  // namespace

Score to_score(double probability) {
  return static_cast<Score>(std::llround(std::ldexp(probability, kScoreFractionBits)));
}

std::size_t argmax(std::span<const Score> scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return best;
}

bool operator==(const Node& a, const Node& b) {
  if (a.left != b.left || a.right != b.right || a.count != b.count ||
      a.prediction != b.prediction) {
    return false;
  }
  // Split fields carry no meaning on leaves.
  if (a.is_leaf()) return true;
  return a.feature == b.feature && a.threshold == b.threshold;
}

bool operator==(const Tree& a, const Tree& b) {
  return a.n_classes_ == b.n_classes_ && a.nodes_ == b.nodes_;
}

Tree::Tree(std::vector<Node> nodes, std::size_t n_classes,
           std::size_t n_features)
    : nodes_(std::move(nodes)), n_classes_(n_classes) {
  if (nodes_.empty()) throw StructuralError("tree has no nodes");
  if (n_classes_ == 0) throw StructuralError("tree has zero classes");
  const auto n = nodes_.size();

  std::vector<int> parents(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Node& node = nodes_[i];
    if (node.prediction.size() != n_classes_) {
      throw StructuralError(node_context(i) + "prediction has " +
                            std::to_string(node.prediction.size()) +
                            " entries, expected " + std::to_string(n_classes_));
    }
    double sum = 0.0;
    for (double p : node.prediction) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw StructuralError(node_context(i) + "negative or non-finite probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
      throw StructuralError(node_context(i) + "prediction sums to " +
                            std::to_string(sum) + ", not 1");
    }
    const bool has_left = node.left != kNoChild;
    const bool has_right = node.right != kNoChild;
    if (has_left != has_right) {
      throw StructuralError(node_context(i) + "inner node needs both children");
    }
    if (!has_left) continue;
    if (node.feature < 0 || static_cast<std::size_t>(node.feature) >= n_features) {
      throw StructuralError(node_context(i) + "feature index " +
                            std::to_string(node.feature) + " out of range");
    }
    if (!std::isfinite(node.threshold)) {
      throw StructuralError(node_context(i) + "non-finite split value");
    }
    for (NodeIndex child : {node.left, node.right}) {
      if (child < 0 || static_cast<std::size_t>(child) >= n) {
        throw StructuralError(node_context(i) + "child index " +
                              std::to_string(child) + " out of range");
      }
      if (child == 0) throw StructuralError(node_context(i) + "child points at the root");
      ++parents[static_cast<std::size_t>(child)];
    }
    if (node.left == node.right) {
      throw StructuralError(node_context(i) + "both children are the same node");
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (parents[i] != 1) {
      throw StructuralError(node_context(i) + "has " + std::to_string(parents[i]) +
                            " parents, expected exactly 1");
    }
  }

  // With one parent per non-root node, n - 1 edges and no edge into the root,
  // the graph is a tree exactly when everything is reachable from the root.
  depth_.assign(n, -1);
  depth_[0] = 0;
  std::vector<NodeIndex> stack{0};
  std::size_t visited = 0;
  while (!stack.empty()) {
    const auto id = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    ++visited;
    const Node& node = nodes_[id];
    max_depth_ = std::max(max_depth_, depth_[id]);
    if (node.is_leaf()) continue;
    for (NodeIndex child : {node.left, node.right}) {
      depth_[static_cast<std::size_t>(child)] = depth_[id] + 1;
      stack.push_back(child);
    }
    const auto& l = nodes_[static_cast<std::size_t>(node.left)];
    const auto& r = nodes_[static_cast<std::size_t>(node.right)];
    if (node.count != l.count + r.count) {
      throw StructuralError(node_context(id) + "sample count " +
                            std::to_string(node.count) +
                            " differs from the children's total");
    }
  }
  if (visited != n) throw StructuralError("tree contains a cycle or unreachable nodes");

  scores_.resize(n * n_classes_);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < n_classes_; ++c) {
      scores_[i * n_classes_ + c] = to_score(nodes_[i].prediction[c]);
    }
  }
}

const Node& Tree::node(NodeIndex id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
    throw StructuralError("node index " + std::to_string(id) + " out of range");
  }
  return nodes_[static_cast<std::size_t>(id)];
}

int Tree::depth_of(NodeIndex id) const {
  node(id);
  return depth_[static_cast<std::size_t>(id)];
}

Forest::Forest(std::vector<Tree> trees, std::size_t n_classes,
               std::size_t n_features, std::vector<std::string> class_labels)
    : trees_(std::move(trees)),
      n_classes_(n_classes),
      n_features_(n_features),
      class_labels_(std::move(class_labels)) {
  if (trees_.empty()) throw StructuralError("forest needs at least one tree");
  if (class_labels_.size() != n_classes_) {
    throw StructuralError("forest has " + std::to_string(class_labels_.size()) +
                          " class labels for " + std::to_string(n_classes_) +
                          " classes");
  }
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (trees_[i].n_classes() != n_classes_) {
      throw StructuralError("tree " + std::to_string(i) + " has a different class count");
    }
    for (const Node& node : trees_[i].nodes()) {
      if (!node.is_leaf() && static_cast<std::size_t>(node.feature) >= n_features_) {
        throw StructuralError("tree " + std::to_string(i) +
                              " splits on a feature outside the forest");
      }
    }
  }
}

std::vector<int> Forest::budgets() const {
  std::vector<int> out;
  out.reserve(trees_.size());
  for (const Tree& t : trees_) out.push_back(t.max_depth_steps());
  return out;
}

int Forest::max_depth() const {
  int d = 0;
  for (const Tree& t : trees_) d = std::max(d, t.max_depth_steps());
  return d;
}

AnytimeState initial_state(const Forest& forest) {
  return AnytimeState{std::vector<NodeIndex>(forest.n_trees(), 0),
                      std::vector<int>(forest.n_trees(), 0)};
}

void validate_state(const Forest& forest, const AnytimeState& state) {
  const auto t = forest.n_trees();
  if (state.node_index.size() != t || state.steps_taken.size() != t) {
    throw StructuralError("state covers " + std::to_string(state.node_index.size()) +
                          " trees, forest has " + std::to_string(t));
  }
  for (std::size_t i = 0; i < t; ++i) {
    const Tree& tree = forest.tree(i);
    const int steps = state.steps_taken[i];
    if (steps < 0 || steps > tree.max_depth_steps()) {
      throw StructuralError("tree " + std::to_string(i) + ": step count " +
                            std::to_string(steps) + " outside [0, budget]");
    }
    const NodeIndex id = state.node_index[i];
    const int depth = tree.depth_of(id);
    const bool consistent =
        tree.node(id).is_leaf() ? depth <= steps : depth == steps;
    if (!consistent) {
      throw StructuralError("tree " + std::to_string(i) + ": node " +
                            std::to_string(id) + " is not reachable in " +
                            std::to_string(steps) + " steps");
    }
  }
}

NodeIndex tree_step(const Tree& tree, NodeIndex node_id,
                    std::span<const double> sample) {
  const Node& node = tree.node(node_id);
  if (node.is_leaf()) return node_id;
  if (static_cast<std::size_t>(node.feature) >= sample.size()) {
    throw DataError("sample has " + std::to_string(sample.size()) +
                    " features, split needs index " + std::to_string(node.feature));
  }
  return tree.step_unchecked(node_id, sample);
}

Prediction combined_prediction(const Forest& forest, const AnytimeState& state) {
  validate_state(forest, state);
  const auto c = forest.n_classes();
  Prediction out;
  out.sums.assign(c, 0.0);
  std::vector<Score> scores(c, 0);
  for (std::size_t i = 0; i < forest.n_trees(); ++i) {
    const Tree& tree = forest.tree(i);
    const NodeIndex id = state.node_index[i];
    const auto& p = tree.node(id).prediction;
    const auto s = tree.scores(id);
    for (std::size_t k = 0; k < c; ++k) {
      out.sums[k] += p[k];
      scores[k] += s[k];
    }
  }
  out.label = argmax(scores);
  return out;
}

std::size_t full_inference(const Forest& forest, std::span<const double> sample) {
  if (sample.size() != forest.n_features()) {
    throw DataError("sample has " + std::to_string(sample.size()) +
                    " features, forest expects " + std::to_string(forest.n_features()));
  }
  std::vector<Score> scores(forest.n_classes(), 0);
  for (const Tree& tree : forest.trees()) {
    NodeIndex id = 0;
    while (!tree.nodes()[static_cast<std::size_t>(id)].is_leaf()) {
      id = tree.step_unchecked(id, sample);
    }
    const auto s = tree.scores(id);
    for (std::size_t k = 0; k < s.size(); ++k) scores[k] += s[k];
  }
  return argmax(scores);
}

}  // namespace anyforest
