#include "doctest.h"

#include <random>

#include "anyforest/error.hpp"
#include "anyforest/forest.hpp"
#include "test_support.hpp"

using namespace anyforest;

namespace {

Node leaf(std::vector<double> p, std::uint64_t count) {
  Node n;
  n.prediction = std::move(p);
  n.count = count;
  return n;
}

Node inner(std::int32_t feature, double threshold, NodeIndex l, NodeIndex r,
           std::vector<double> p, std::uint64_t count) {
  Node n = leaf(std::move(p), count);
  n.feature = feature;
  n.threshold = threshold;
  n.left = l;
  n.right = r;
  return n;
}

// root(f0 <= 5) -> leaf [1,0] x2 | leaf [0,1] x2
Tree stump() {
  return Tree({inner(0, 5.0, 1, 2, {0.5, 0.5}, 4), leaf({1.0, 0.0}, 2), leaf({0.0, 1.0}, 2)}, 2,
              2);
}

Forest single(Tree t) { return Forest({std::move(t)}, 2, 2, {"a", "b"}); }

}  // namespace

TEST_CASE("tree_step follows the <= rule and is a no-op on leaves") {
  const Tree t = stump();
  const std::vector<double> at{5.0, 0.0};
  const std::vector<double> above{5.1, 0.0};
  CHECK(tree_step(t, 0, at) == 1);
  CHECK(tree_step(t, 0, above) == 2);
  CHECK(tree_step(t, 1, above) == 1);
  CHECK(tree_step(t, 2, at) == 2);
  CHECK_THROWS_AS(tree_step(t, 3, at), StructuralError);
  CHECK_THROWS_AS(tree_step(t, -1, at), StructuralError);
  CHECK_THROWS_AS(tree_step(t, 0, std::vector<double>{}), DataError);
}

TEST_CASE("tree construction rejects malformed nodes") {
  SUBCASE("prediction must sum to one") {
    CHECK_THROWS_AS(Tree({leaf({0.5, 0.6}, 1)}, 2, 1), StructuralError);
  }
  SUBCASE("prediction entries are non-negative") {
    CHECK_THROWS_AS(Tree({leaf({1.5, -0.5}, 1)}, 2, 1), StructuralError);
  }
  SUBCASE("prediction length matches the class count") {
    CHECK_THROWS_AS(Tree({leaf({1.0}, 1)}, 2, 1), StructuralError);
  }
  SUBCASE("inner nodes need both children") {
    Node n = inner(0, 0.0, 1, kNoChild, {1.0, 0.0}, 1);
    CHECK_THROWS_AS(Tree({n, leaf({1.0, 0.0}, 1)}, 2, 1), StructuralError);
  }
  SUBCASE("child index in range") {
    CHECK_THROWS_AS(Tree({inner(0, 0.0, 1, 5, {1.0, 0.0}, 2), leaf({1.0, 0.0}, 1)}, 2, 1),
                    StructuralError);
  }
  SUBCASE("feature index in range") {
    CHECK_THROWS_AS(Tree({inner(3, 0.0, 1, 2, {1.0, 0.0}, 2), leaf({1.0, 0.0}, 1),
                          leaf({1.0, 0.0}, 1)},
                         2, 2),
                    StructuralError);
  }
  SUBCASE("every non-root node has one parent") {
    CHECK_THROWS_AS(Tree({inner(0, 0.0, 1, 1, {1.0, 0.0}, 2), leaf({1.0, 0.0}, 1)}, 2, 1),
                    StructuralError);
  }
  SUBCASE("no edge back into the root") {
    CHECK_THROWS_AS(Tree({inner(0, 0.0, 0, 1, {1.0, 0.0}, 2), leaf({1.0, 0.0}, 1)}, 2, 1),
                    StructuralError);
  }
  SUBCASE("unreachable nodes") {
    CHECK_THROWS_AS(Tree({leaf({1.0, 0.0}, 1), leaf({1.0, 0.0}, 1)}, 2, 1), StructuralError);
  }
  SUBCASE("counts are conserved") {
    CHECK_THROWS_AS(Tree({inner(0, 0.0, 1, 2, {0.5, 0.5}, 5), leaf({1.0, 0.0}, 2),
                          leaf({0.0, 1.0}, 2)},
                         2, 1),
                    StructuralError);
  }
  SUBCASE("empty tree") { CHECK_THROWS_AS(Tree({}, 2, 1), StructuralError); }
}

TEST_CASE("forest construction rejects inconsistent trees") {
  CHECK_THROWS_AS(Forest({}, 2, 2, {"a", "b"}), StructuralError);
  const Tree on_second({inner(1, 0.0, 1, 2, {0.5, 0.5}, 2), leaf({1.0, 0.0}, 1),
                        leaf({0.0, 1.0}, 1)},
                       2, 2);
  CHECK_THROWS_AS(Forest({on_second}, 2, 1, {"a", "b"}), StructuralError);
  CHECK_THROWS_AS(Forest({stump(), Tree({leaf({0.2, 0.3, 0.5}, 1)}, 3, 2)}, 2, 2, {"a", "b"}),
                  StructuralError);
  CHECK_THROWS_AS(Forest({stump()}, 2, 2, {"a"}), StructuralError);
}

TEST_CASE("depths and budgets") {
  const Tree t = stump();
  CHECK(t.max_depth_steps() == 1);
  CHECK(t.depth_of(0) == 0);
  CHECK(t.depth_of(2) == 1);
  const Tree lone({leaf({1.0, 0.0}, 3)}, 2, 2);
  CHECK(lone.max_depth_steps() == 0);
  const Forest f({t, lone}, 2, 2, {"a", "b"});
  CHECK(f.budgets() == std::vector<int>{1, 0});
  CHECK(f.max_depth() == 1);
}

TEST_CASE("combined_prediction sums vectors and breaks ties low") {
  const Tree a({leaf({0.6, 0.4}, 1)}, 2, 1);
  const Tree b({leaf({0.3, 0.7}, 1)}, 2, 1);
  const Forest f({a, b}, 2, 1, {"x", "y"});
  const auto p = combined_prediction(f, initial_state(f));
  CHECK(p.label == 1);
  CHECK(p.sums[0] == doctest::Approx(0.9));
  CHECK(p.sums[1] == doctest::Approx(1.1));

  const Forest c({Tree({leaf({0.2, 0.8}, 1)}, 2, 1)}, 2, 1, {"x", "y"});
  CHECK(combined_prediction(c, initial_state(c)).label == 1);

  const Tree even({leaf({0.5, 0.5}, 2)}, 2, 1);
  const Forest tie({even}, 2, 1, {"x", "y"});
  CHECK(combined_prediction(tie, initial_state(tie)).label == 0);
  const std::vector<Score> flat{7, 7, 7};
  CHECK(argmax(flat) == 0);
}

TEST_CASE("invalid anytime states are rejected") {
  const Forest f = single(stump());
  AnytimeState s = initial_state(f);
  s.steps_taken[0] = 2;
  CHECK_THROWS_AS(validate_state(f, s), StructuralError);
  s.steps_taken[0] = 0;
  s.node_index[0] = 1;
  CHECK_THROWS_AS(validate_state(f, s), StructuralError);
  s.steps_taken[0] = 1;
  CHECK_NOTHROW(validate_state(f, s));
}

TEST_CASE("full_inference matches a step-by-step walk to the leaves") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 300; ++rep) {
    testing::RandomTreeOptions opt;
    opt.max_depth = 1 + static_cast<int>(rng() % 5);
    opt.n_classes = 2 + rng() % 3;
    const Forest f = testing::random_forest(rng, 1 + rng() % 6, opt);
    const Dataset xs = testing::random_samples(rng, 5, opt.n_features, opt.n_classes);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto row = xs.row(i);
      CHECK(full_inference(f, row) == testing::reference_class(f, row, f.budgets()));

      // Stepping d_i times from the root lands on a leaf, and further steps stay there.
      AnytimeState s = initial_state(f);
      for (std::size_t t = 0; t < f.n_trees(); ++t) {
        const Tree& tree = f.tree(t);
        const NodeIndex end = testing::walk(tree, row, tree.max_depth_steps());
        CHECK(tree.node(end).is_leaf());
        CHECK(tree_step(tree, end, row) == end);
        s.node_index[t] = end;
        s.steps_taken[t] = tree.max_depth_steps();
      }
      CHECK(combined_prediction(f, s).label == full_inference(f, row));
    }
  }
}

TEST_CASE("duplicating a tree never changes full_inference") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 200; ++rep) {
    testing::RandomTreeOptions opt;
    opt.n_classes = 3;
    const Forest f = testing::random_forest(rng, 1 + rng() % 4, opt);
    const Forest one({f.tree(0)}, f.n_classes(), f.n_features(), f.class_labels());
    const Forest two({f.tree(0), f.tree(0)}, f.n_classes(), f.n_features(), f.class_labels());
    const Dataset xs = testing::random_samples(rng, 4, opt.n_features, opt.n_classes);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(full_inference(one, xs.row(i)) == full_inference(two, xs.row(i)));
    }
  }
}

TEST_CASE("full_inference rejects a sample of the wrong width") {
  const Forest f = single(stump());
  CHECK_THROWS_AS(full_inference(f, std::vector<double>{1.0}), DataError);
}

TEST_CASE("fixed-point scores agree with real-valued sums away from ties") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    const std::size_t c = 2 + rng() % 4;
    const std::size_t n = 1 + rng() % 8;
    std::vector<long double> real(c, 0.0L);
    std::vector<Score> fixed(c, 0);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<double> p(c);
      double sum = 0.0;
      for (auto& x : p) sum += x = unit(rng);
      for (std::size_t k = 0; k < c; ++k) {
        real[k] += p[k] / sum;
        fixed[k] += to_score(p[k] / sum);
      }
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < c; ++k) {
      if (real[k] > real[best]) best = k;
    }
    bool clear = true;
    for (std::size_t k = 0; k < c; ++k) {
      if (k != best && real[best] - real[k] < 1e-9L) clear = false;
    }
    if (clear) CHECK(argmax(fixed) == best);
  }
  CHECK(to_score(1.0) == kScoreOne);
  CHECK(to_score(0.0) == 0);
}
