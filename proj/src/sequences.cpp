#include "anyforest/sequences.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "anyforest/error.hpp"

namespace anyforest {

namespace {

// Leaf-level class of every sample for one tree.
std::vector<std::size_t> tree_predictions(const RoutingTable& routing, std::size_t tree) {
  const auto depth = routing.budgets()[tree];
  std::vector<std::size_t> out(routing.n_samples());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = argmax(routing.scores(tree, depth, s));
  return out;
}

std::vector<std::vector<std::size_t>> all_tree_predictions(const RoutingTable& routing) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(routing.n_trees());
  for (std::size_t t = 0; t < routing.n_trees(); ++t) out.push_back(tree_predictions(routing, t));
  return out;
}

// Running leaf-score sums of a growing tree subset.
class PrefixEnsemble {
 public:
  explicit PrefixEnsemble(const RoutingTable& routing)
      : routing_(routing), sums_(routing.n_samples() * routing.n_classes(), 0) {}

  void add(std::size_t tree) {
    const auto block = routing_.scores(tree, routing_.budgets()[tree]);
    for (std::size_t k = 0; k < sums_.size(); ++k) sums_[k] += block[k];
  }

  std::size_t correct_with(std::size_t tree) const {
    const auto c = routing_.n_classes();
    const auto block = routing_.scores(tree, routing_.budgets()[tree]);
    std::vector<Score> tmp(c);
    std::size_t correct = 0;
    for (std::size_t s = 0; s < routing_.n_samples(); ++s) {
      for (std::size_t k = 0; k < c; ++k) tmp[k] = sums_[s * c + k] + block[s * c + k];
      correct += argmax(tmp) == routing_.labels()[s];
    }
    return correct;
  }

  std::vector<std::size_t> predictions() const {
    const auto c = routing_.n_classes();
    std::vector<std::size_t> out(routing_.n_samples());
    for (std::size_t s = 0; s < out.size(); ++s) {
      out[s] = argmax(std::span<const Score>(sums_).subspan(s * c, c));
    }
    return out;
  }

 private:
  const RoutingTable& routing_;
  std::vector<Score> sums_;
};

std::size_t disagreements(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t n = 0;
  for (std::size_t s = 0; s < a.size(); ++s) n += a[s] != b[s];
  return n;
}

TreeSequence rank_descending(const std::vector<double>& score) {
  TreeSequence order(score.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  return order;
}

}  // namespace

std::vector<std::size_t> individual_correct(const RoutingTable& routing) {
  std::vector<std::size_t> out(routing.n_trees());
  for (std::size_t t = 0; t < routing.n_trees(); ++t) {
    const auto preds = tree_predictions(routing, t);
    for (std::size_t s = 0; s < preds.size(); ++s) out[t] += preds[s] == routing.labels()[s];
  }
  return out;
}

TreeSequence sequence_individual_error(const RoutingTable& routing) {
  const auto correct = individual_correct(routing);
  return rank_descending(std::vector<double>(correct.begin(), correct.end()));
}

TreeSequence sequence_error_ambiguity(const RoutingTable& routing, double lambda) {
  const auto n = static_cast<double>(routing.n_samples());
  const auto correct = individual_correct(routing);
  const auto preds = all_tree_predictions(routing);
  PrefixEnsemble ensemble(routing);
  for (std::size_t t = 0; t < routing.n_trees(); ++t) ensemble.add(t);
  const auto ensemble_preds = ensemble.predictions();

  std::vector<double> score(routing.n_trees());
  for (std::size_t t = 0; t < score.size(); ++t) {
    score[t] = static_cast<double>(correct[t]) / n +
               lambda * static_cast<double>(disagreements(preds[t], ensemble_preds)) / n;
  }
  return rank_descending(score);
}

TreeSequence sequence_reduced_error(const RoutingTable& routing) {
  const auto t = routing.n_trees();
  std::vector<bool> placed(t, false);
  PrefixEnsemble prefix(routing);
  TreeSequence out;
  while (out.size() < t) {
    std::size_t pick = t;
    std::size_t pick_correct = 0;
    for (std::size_t i = 0; i < t; ++i) {
      if (placed[i]) continue;
      const auto correct = prefix.correct_with(i);
      if (pick == t || correct > pick_correct) {
        pick = i;
        pick_correct = correct;
      }
    }
    placed[pick] = true;
    prefix.add(pick);
    out.push_back(pick);
  }
  return out;
}

TreeSequence sequence_drep(const RoutingTable& routing, double rho) {
  const auto t = routing.n_trees();
  const auto n = static_cast<double>(routing.n_samples());
  const auto correct = individual_correct(routing);
  const auto preds = all_tree_predictions(routing);

  TreeSequence out;
  std::vector<bool> placed(t, false);
  PrefixEnsemble prefix(routing);
  const auto first = static_cast<std::size_t>(
      std::max_element(correct.begin(), correct.end()) - correct.begin());
  out.push_back(first);
  placed[first] = true;
  prefix.add(first);

  while (out.size() < t) {
    const auto prefix_preds = prefix.predictions();
    std::size_t pick = t;
    double pick_score = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      if (placed[i]) continue;
      const double error = 1.0 - static_cast<double>(correct[i]) / n;
      const double diversity = static_cast<double>(disagreements(preds[i], prefix_preds)) / n;
      const double score = error - rho * diversity;
      if (pick == t || score < pick_score) {
        pick = i;
        pick_score = score;
      }
    }
    placed[pick] = true;
    prefix.add(pick);
    out.push_back(pick);
  }
  return out;
}

namespace {

void require_binary(const Forest& forest, const RoutingTable& routing) {
  if (forest.n_classes() != 2 || routing.n_classes() != 2) {
    throw UnsupportedError("QWYC ordering requires a binary classification forest, got " +
                           std::to_string(forest.n_classes()) + " classes");
  }
  if (forest.n_trees() != routing.n_trees()) {
    throw StructuralError("routing table was built for a different forest");
  }
}

// Largest |score0 - score1| over a tree's leaves.
std::vector<Score> leaf_margin_bounds(const Forest& forest) {
  std::vector<Score> out;
  for (const Tree& tree : forest.trees()) {
    Score bound = 0;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      const auto id = static_cast<NodeIndex>(i);
      if (!tree.nodes()[i].is_leaf()) continue;
      const auto s = tree.scores(id);
      bound = std::max(bound, std::abs(s[0] - s[1]));
    }
    out.push_back(bound);
  }
  return out;
}

Score leaf_margin(const RoutingTable& routing, std::size_t tree, std::size_t sample) {
  const auto s = routing.scores(tree, routing.budgets()[tree], sample);
  return s[0] - s[1];
}

}  // namespace

std::vector<bool> qwyc_decided(const Forest& forest, const RoutingTable& routing,
                               std::span<const std::size_t> placed) {
  require_binary(forest, routing);
  const auto bounds = leaf_margin_bounds(forest);
  std::vector<bool> is_placed(routing.n_trees(), false);
  for (std::size_t t : placed) is_placed.at(t) = true;
  Score remaining = 0;
  for (std::size_t t = 0; t < bounds.size(); ++t) {
    if (!is_placed[t]) remaining += bounds[t];
  }
  std::vector<bool> out(routing.n_samples());
  for (std::size_t s = 0; s < out.size(); ++s) {
    Score margin = 0;
    for (std::size_t t : placed) margin += leaf_margin(routing, t, s);
    out[s] = std::abs(margin) > remaining;
  }
  return out;
}

TreeSequence sequence_qwyc(const Forest& forest, const RoutingTable& routing) {
  require_binary(forest, routing);
  const auto t = routing.n_trees();
  const auto n = routing.n_samples();
  const auto bounds = leaf_margin_bounds(forest);
  const auto correct = individual_correct(routing);

  std::vector<Score> margin(n, 0);
  Score remaining = std::accumulate(bounds.begin(), bounds.end(), Score{0});
  std::vector<bool> placed(t, false);
  TreeSequence out;
  while (out.size() < t) {
    std::size_t pick = t;
    std::size_t pick_decided = 0;
    for (std::size_t i = 0; i < t; ++i) {
      if (placed[i]) continue;
      const Score rest = remaining - bounds[i];
      std::size_t decided = 0;
      for (std::size_t s = 0; s < n; ++s) {
        decided += std::abs(margin[s] + leaf_margin(routing, i, s)) > rest;
      }
      const bool better = pick == t || decided > pick_decided ||
                          (decided == pick_decided && correct[i] > correct[pick]);
      if (better) {
        pick = i;
        pick_decided = decided;
      }
    }
    placed[pick] = true;
    remaining -= bounds[pick];
    for (std::size_t s = 0; s < n; ++s) margin[s] += leaf_margin(routing, pick, s);
    out.push_back(pick);
  }
  return out;
}

}  // namespace anyforest
