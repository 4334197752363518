#include "anyforest/cart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "anyforest/error.hpp"

namespace anyforest {

namespace {

using u128 = unsigned __int128;

// Gini decrease is maximised by maximising sum_c(L_c^2)/n_L + sum_c(R_c^2)/n_R.
// Kept as an exact fraction so that equivalent splits compare equal and the
// feature/threshold tie rule is applied deterministically.
struct SplitScore {
  u128 numerator = 0;
  u128 denominator = 1;

  bool operator>(const SplitScore& o) const {
    return numerator * o.denominator > o.numerator * denominator;
  }
  bool operator==(const SplitScore& o) const {
    return numerator * o.denominator == o.numerator * denominator;
  }
};

struct Candidate {
  bool valid = false;
  SplitScore score;
  std::size_t feature = 0;
  double threshold = 0.0;
};

class TreeGrower {
 public:
  TreeGrower(const Dataset& data, const TrainConfig& config, std::mt19937_64& rng)
      : data_(data),
        config_(config),
        rng_(rng),
        n_classes_(data.n_classes()),
        n_features_(data.n_features()),
        max_features_(config.features.resolve(data.n_features())) {}

  std::vector<Node> grow(std::vector<std::size_t> rows) {
    nodes_.clear();
    build(rows, 0);
    return std::move(nodes_);
  }

 private:
  NodeIndex build(std::vector<std::size_t>& rows, int depth) {
    const auto id = static_cast<NodeIndex>(nodes_.size());
    nodes_.emplace_back();

    std::vector<std::uint64_t> counts(n_classes_, 0);
    for (std::size_t r : rows) ++counts[data_.label(r)];
    {
      Node& node = nodes_.back();
      node.count = rows.size();
      node.prediction.resize(n_classes_);
      for (std::size_t c = 0; c < n_classes_; ++c) {
        node.prediction[c] =
            static_cast<double>(counts[c]) / static_cast<double>(rows.size());
      }
    }

    const bool pure = std::count_if(counts.begin(), counts.end(),
                                    [](std::uint64_t k) { return k > 0; }) <= 1;
    if (depth >= config_.max_depth || pure || rows.size() < 2) return id;

    const Candidate best = find_split(rows);
    if (!best.valid) return id;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (std::size_t r : rows) {
      (data_.row(r)[best.feature] <= best.threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    const NodeIndex left = build(left_rows, depth + 1);
    const NodeIndex right = build(right_rows, depth + 1);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.feature = static_cast<std::int32_t>(best.feature);
    node.threshold = best.threshold;
    node.left = left;
    node.right = right;
    return id;
  }

  Candidate find_split(const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> features(n_features_);
    std::iota(features.begin(), features.end(), std::size_t{0});
    if (max_features_ < n_features_) std::shuffle(features.begin(), features.end(), rng_);

    Candidate best;
    std::size_t evaluated = 0;
    std::vector<std::pair<double, std::size_t>> column(rows.size());
    std::vector<std::uint64_t> left(n_classes_);
    std::vector<std::uint64_t> right(n_classes_);
    for (std::size_t f : features) {
      if (evaluated >= max_features_) break;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        column[i] = {data_.row(rows[i])[f], data_.label(rows[i])};
      }
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;  // constant
      ++evaluated;

      std::fill(left.begin(), left.end(), 0);
      std::fill(right.begin(), right.end(), 0);
      for (const auto& [v, y] : column) ++right[y];
      u128 left_sq = 0;
      u128 right_sq = 0;
      for (auto k : right) right_sq += u128{k} * k;

      const std::size_t n = column.size();
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t y = column[i].second;
        // (k+1)^2 - k^2 = 2k + 1
        left_sq += 2 * u128{left[y]} + 1;
        right_sq -= 2 * u128{right[y]} - 1;
        ++left[y];
        --right[y];
        const double lo = column[i].first;
        const double hi = column[i + 1].first;
        if (lo == hi) continue;

        const u128 n_left = i + 1;
        const u128 n_right = n - i - 1;
        SplitScore score{left_sq * n_right + right_sq * n_left, n_left * n_right};
        double threshold = lo + (hi - lo) / 2.0;
        if (threshold >= hi || threshold < lo) threshold = lo;

        const bool better =
            !best.valid || score > best.score ||
            (score == best.score &&
             (f < best.feature || (f == best.feature && threshold < best.threshold)));
        if (better) best = Candidate{true, score, f, threshold};
      }
    }
    return best;
  }

  const Dataset& data_;
  const TrainConfig& config_;
  std::mt19937_64& rng_;
  std::size_t n_classes_;
  std::size_t n_features_;
  std::size_t max_features_;
  std::vector<Node> nodes_;
};

}  // namespace

std::size_t FeatureSubsample::resolve(std::size_t n_features) const {
  switch (kind) {
    case Kind::kAll:
      return n_features;
    case Kind::kCount:
      return std::clamp<std::size_t>(count, 1, n_features);
    case Kind::kSqrt:
    default:
      return std::clamp<std::size_t>(
          static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_features)))),
          1, n_features);
  }
}

Forest train_forest(const Dataset& train, const TrainConfig& config) {
  if (train.empty()) throw DataError("training set is empty");
  if (config.n_trees == 0) throw ConfigError("n_trees must be at least 1");
  if (config.max_depth < 1) throw ConfigError("max_depth must be at least 1");

  std::vector<Tree> trees;
  trees.reserve(config.n_trees);
  for (std::size_t i = 0; i < config.n_trees; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);

    std::vector<std::size_t> rows(train.size());
    if (config.bootstrap) {
      std::uniform_int_distribution<std::size_t> pick(0, train.size() - 1);
      for (auto& r : rows) r = pick(rng);
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    TreeGrower grower(train, config, rng);
    trees.emplace_back(grower.grow(std::move(rows)), train.n_classes(), train.n_features());
  }
  return Forest(std::move(trees), train.n_classes(), train.n_features(), train.label_map());
}

}  // namespace anyforest
