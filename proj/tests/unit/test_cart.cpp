#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "anyforest/cart.hpp"
#include "anyforest/error.hpp"
#include "anyforest/synthetic.hpp"

using namespace anyforest;

namespace {

Dataset from_columns(std::vector<std::vector<double>> rows, std::vector<std::size_t> labels,
                     std::size_t n_classes) {
  std::vector<double> x;
  for (const auto& r : rows) x.insert(x.end(), r.begin(), r.end());
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n_classes; ++k) names.push_back(std::to_string(k));
  return Dataset(rows.front().size(), std::move(x), std::move(labels), std::move(names));
}

TrainConfig exact(int depth) {
  TrainConfig c;
  c.n_trees = 1;
  c.max_depth = depth;
  c.bootstrap = false;
  c.features = FeatureSubsample::all();
  return c;
}

double gini_weighted(const std::vector<std::size_t>& left, const std::vector<std::size_t>& right) {
  auto impurity = [](const std::vector<std::size_t>& c, double& n) {
    n = 0;
    for (auto v : c) n += static_cast<double>(v);
    if (n == 0) return 0.0;
    double g = 1.0;
    for (auto v : c) g -= (static_cast<double>(v) / n) * (static_cast<double>(v) / n);
    return g;
  };
  double nl = 0, nr = 0;
  const double gl = impurity(left, nl);
  const double gr = impurity(right, nr);
  return (nl * gl + nr * gr) / (nl + nr);
}

}  // namespace

TEST_CASE("single-class data gives lone one-hot roots") {
  const Dataset d = from_columns({{1.0}, {2.0}, {3.0}}, {1, 1, 1}, 2);
  TrainConfig c;
  c.n_trees = 3;
  const Forest f = train_forest(d, c);
  for (const Tree& t : f.trees()) {
    REQUIRE(t.size() == 1);
    CHECK(t.node(0).prediction == std::vector<double>{0.0, 1.0});
  }
}

TEST_CASE("max_depth 1 gives at most three nodes per tree") {
  const Dataset d = make_blobs(200, 4, 3, 0.1, 2);
  TrainConfig c;
  c.n_trees = 8;
  c.max_depth = 1;
  const Forest f = train_forest(d, c);
  for (const Tree& t : f.trees()) CHECK(t.size() <= 3);
}

TEST_CASE("separable classes split between them with pure children") {
  const Dataset d = from_columns({{1.0}, {2.0}, {3.0}, {6.0}, {7.0}, {8.0}}, {0, 0, 0, 1, 1, 1}, 2);
  const Forest f = train_forest(d, exact(2));
  const Tree& t = f.tree(0);
  REQUIRE(t.size() == 3);
  CHECK(t.node(0).feature == 0);
  CHECK(t.node(0).threshold == 4.5);
  CHECK(t.node(t.node(0).left).prediction == std::vector<double>{1.0, 0.0});
  CHECK(t.node(t.node(0).right).prediction == std::vector<double>{0.0, 1.0});
}

TEST_CASE("equal-gain splits go to the lowest feature, then lowest threshold") {
  // Features 0 and 1 are identical, so both offer the same best split.
  const Dataset d =
      from_columns({{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}, {4.0, 4.0}}, {0, 1, 0, 1}, 2);
  const Forest f = train_forest(d, exact(1));
  const Tree& t = f.tree(0);
  CHECK(t.node(0).feature == 0);
  CHECK(t.node(0).threshold == 1.5);
}

TEST_CASE("root split equals an exhaustive Gini scan") {
  std::mt19937_64 rng(23);
  std::size_t compared = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 6 + rng() % 20;
    const std::size_t nf = 1 + rng() % 4;
    const std::size_t nc = 2 + rng() % 2;
    std::vector<std::vector<double>> rows(n, std::vector<double>(nf));
    std::vector<std::size_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& v : rows[i]) v = static_cast<double>(rng() % 6);
      y[i] = rng() % nc;
    }
    const Dataset d = from_columns(rows, y, nc);

    // Best and runner-up weighted impurity over every midpoint.
    double best = INFINITY, second = INFINITY;
    int best_f = -1;
    double best_thr = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      std::set<double> values;
      for (const auto& r : rows) values.insert(r[f]);
      for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
        const double thr = (*it + *std::next(it)) / 2.0;
        std::vector<std::size_t> l(nc, 0), r(nc, 0);
        for (std::size_t i = 0; i < n; ++i) (rows[i][f] <= thr ? l : r)[y[i]]++;
        const double g = gini_weighted(l, r);
        if (g < best) {
          second = best;
          best = g;
          best_f = static_cast<int>(f);
          best_thr = thr;
        } else if (g < second) {
          second = g;
        }
      }
    }
    const Forest f = train_forest(d, exact(1));
  const Tree& t = f.tree(0);
    bool pure = true;
    for (std::size_t i = 1; i < n; ++i) pure = pure && y[i] == y[0];
    if (best_f < 0 || pure) {
      CHECK(t.size() == 1);
      continue;
    }
    if (second - best < 1e-12) continue;  // ambiguous in floating point
    ++compared;
    REQUIRE(t.size() == 3);
    CHECK(t.node(0).feature == best_f);
    CHECK(t.node(0).threshold == best_thr);
  }
  CHECK(compared > 100);
}

TEST_CASE("counts are conserved and depth is bounded") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    const Dataset d = make_blobs(60 + rng() % 100, 2 + rng() % 5, 2 + rng() % 3, 0.2, rng());
    TrainConfig c;
    c.n_trees = 3;
    c.max_depth = 1 + static_cast<int>(rng() % 6);
    c.seed = rng();
    const Forest f = train_forest(d, c);
    for (const Tree& t : f.trees()) {
      CHECK(t.max_depth_steps() <= c.max_depth);
      CHECK(t.node(0).count == d.size());
      for (const Node& n : t.nodes()) {
        if (n.is_leaf()) continue;
        const Node& l = t.node(n.left);
        const Node& r = t.node(n.right);
        for (std::size_t k = 0; k < f.n_classes(); ++k) {
          const double lhs = static_cast<double>(n.count) * n.prediction[k];
          const double rhs = static_cast<double>(l.count) * l.prediction[k] +
                             static_cast<double>(r.count) * r.prediction[k];
          CHECK(std::abs(lhs - rhs) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("training is deterministic in its seed") {
  const Dataset d = make_blobs(150, 6, 3, 0.15, 4);
  TrainConfig c;
  c.n_trees = 5;
  c.max_depth = 4;
  c.seed = 99;
  CHECK(train_forest(d, c) == train_forest(d, c));
  TrainConfig other = c;
  other.seed = 100;
  CHECK_FALSE(train_forest(d, c) == train_forest(d, other));
}

TEST_CASE("without bootstrap the roots carry the training prior") {
  const Dataset d = make_blobs(97, 3, 3, 0.3, 8);
  std::vector<std::size_t> freq(3, 0);
  for (auto y : d.labels()) ++freq[y];
  std::size_t majority = 0;
  for (std::size_t k = 1; k < 3; ++k) {
    if (freq[k] > freq[majority]) majority = k;
  }
  TrainConfig c;
  c.n_trees = 4;
  c.bootstrap = false;
  const Forest f = train_forest(d, c);
  CHECK(combined_prediction(f, initial_state(f)).label == majority);
  for (const Tree& t : f.trees()) {
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(t.node(0).prediction[k] ==
            doctest::Approx(static_cast<double>(freq[k]) / static_cast<double>(d.size())));
    }
  }
}

TEST_CASE("feature subsample sizes") {
  CHECK(FeatureSubsample::sqrt().resolve(13) == 4);
  CHECK(FeatureSubsample::sqrt().resolve(16) == 4);
  CHECK(FeatureSubsample::sqrt().resolve(1) == 1);
  CHECK(FeatureSubsample::all().resolve(7) == 7);
  CHECK(FeatureSubsample::fixed(3).resolve(7) == 3);
  CHECK(FeatureSubsample::fixed(0).resolve(7) == 1);
  CHECK(FeatureSubsample::fixed(8).resolve(7) == 7);
}

TEST_CASE("invalid training requests") {
  const Dataset d = make_blobs(20, 2, 2, 0.0, 1);
  TrainConfig c;
  c.max_depth = 0;
  CHECK_THROWS_AS(train_forest(d, c), ConfigError);
  c.max_depth = 3;
  c.n_trees = 0;
  CHECK_THROWS_AS(train_forest(d, c), ConfigError);
  CHECK_THROWS_AS(train_forest(Dataset(), TrainConfig{}), DataError);
}
