#include "anyforest/worked_example.hpp"

#include <array>
#include <set>

namespace anyforest {

namespace {

constexpr std::size_t kSamples = 8;
constexpr std::size_t kTrees = 3;
constexpr std::size_t kFeaturesPerTree = 3;

using Members = std::set<int>;

// Sample memberships of the six non-root nodes, in layout order
// left, right, left-left, left-right, right-left, right-right.
const std::array<std::array<Members, 6>, kTrees> kMembership{{
    {{{5, 6}, {1, 2, 3, 4, 7, 8}, {5}, {6}, {7}, {1, 2, 3, 4, 8}}},
    {{{1, 5, 6, 7, 8}, {2, 3, 4}, {5}, {1, 6, 7, 8}, {2}, {3, 4}}},
    {{{1, 2, 5, 6}, {3, 4, 7, 8}, {1, 5}, {2, 6}, {7, 8}, {3, 4}}},
}};

int label_of(int sample) { return sample <= 4 ? 0 : 1; }

Node make_node(const Members& members) {
  Node node;
  node.count = members.size();
  std::size_t class_one = 0;
  for (int s : members) class_one += static_cast<std::size_t>(label_of(s));
  const auto n = static_cast<double>(members.size());
  node.prediction = {static_cast<double>(members.size() - class_one) / n,
                     static_cast<double>(class_one) / n};
  return node;
}

}  // namespace

WorkedExample worked_example() {
  const Members everyone{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<Tree> trees;
  for (std::size_t t = 0; t < kTrees; ++t) {
    const auto& m = kMembership[t];
    const auto base = static_cast<std::int32_t>(t * kFeaturesPerTree);
    std::vector<Node> nodes;
    nodes.push_back(make_node(everyone));
    for (const auto& members : m) nodes.push_back(make_node(members));
    // Root splits on feature base, left child on base+1, right child on base+2.
    const std::array<std::array<NodeIndex, 3>, 3> inner{{{0, 1, 2}, {1, 3, 4}, {2, 5, 6}}};
    for (std::size_t k = 0; k < inner.size(); ++k) {
      Node& node = nodes[static_cast<std::size_t>(inner[k][0])];
      node.feature = base + static_cast<std::int32_t>(k);
      node.threshold = 0.5;
      node.left = inner[k][1];
      node.right = inner[k][2];
    }
    trees.emplace_back(std::move(nodes), 2, kTrees * kFeaturesPerTree);
  }
  Forest forest(std::move(trees), 2, kTrees * kFeaturesPerTree, {"1", "2"});

  // Indicator features: 1.0 sends the sample right at that tree's split.
  std::vector<double> features;
  std::vector<std::size_t> labels;
  for (int s = 1; s <= static_cast<int>(kSamples); ++s) {
    for (std::size_t t = 0; t < kTrees; ++t) {
      const auto& m = kMembership[t];
      const bool right_at_root = m[1].count(s) > 0;
      features.push_back(right_at_root ? 1.0 : 0.0);
      features.push_back(m[3].count(s) > 0 ? 1.0 : 0.0);
      features.push_back(m[5].count(s) > 0 ? 1.0 : 0.0);
    }
    labels.push_back(static_cast<std::size_t>(label_of(s)));
  }
  Dataset ordering(kTrees * kFeaturesPerTree, std::move(features), std::move(labels),
                   {"1", "2"}, "worked_example");
  return {std::move(forest), std::move(ordering)};
}

}  // namespace anyforest
