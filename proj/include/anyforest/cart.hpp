#pragma once

#include <cstddef>
#include <cstdint>

#include "anyforest/dataset.hpp"
#include "anyforest/forest.hpp"

namespace anyforest {

// Number of candidate features drawn at every split.
struct FeatureSubsample {
  enum class Kind { kSqrt, kAll, kCount };
  Kind kind = Kind::kSqrt;
  std::size_t count = 0;

  static FeatureSubsample sqrt() { return {}; }
  static FeatureSubsample all() { return {Kind::kAll, 0}; }
  static FeatureSubsample fixed(std::size_t n) { return {Kind::kCount, n}; }

  // Resolved count for a dataset with `n_features` columns, in [1, n_features].
  std::size_t resolve(std::size_t n_features) const;
};

struct TrainConfig {
  std::size_t n_trees = 10;
  int max_depth = 5;
  std::uint64_t seed = 0;
  bool bootstrap = true;
  FeatureSubsample features = FeatureSubsample::sqrt();
};

// Grows a random forest with Gini-impurity CART.
//
// Every node stores the class distribution and count of the (bootstrap)
// training samples reaching it. Thresholds sit at midpoints between
// consecutive distinct feature values; the best split maximises the impurity
// decrease, ties going to the lowest feature index and then the lowest
// threshold. Growth stops at max_depth, on pure nodes and on nodes with fewer
// than two samples. Each tree draws from its own generator seeded with
// (seed, tree index), so the result is a pure function of its inputs.
//
// Throws DataError for an empty training set and ConfigError for
// n_trees == 0 or max_depth < 1.
Forest train_forest(const Dataset& train, const TrainConfig& config);

}  // namespace anyforest
