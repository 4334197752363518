#include "doctest.h"

#include <random>

#include "anyforest/squirrel.hpp"
#include "anyforest/worked_example.hpp"
#include "test_support.hpp"

using namespace anyforest;

namespace {

// Greedy walks recomputed from scratch with the step-walk reference.
StepOrder greedy_forward(const Forest& f, const Dataset& xs) {
  const auto b = f.budgets();
  std::vector<int> c(b.size(), 0);
  StepOrder o{b, {}};
  for (std::size_t k = 0; k < LatticeShape(b).total_steps(); ++k) {
    std::size_t pick = b.size();
    std::size_t best = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (c[i] == b[i]) continue;
      ++c[i];
      const auto v = testing::reference_correct(f, xs, c);
      --c[i];
      if (pick == b.size() || v > best) {
        pick = i;
        best = v;
      }
    }
    ++c[pick];
    o.steps.push_back(pick);
  }
  return o;
}

StepOrder greedy_backward(const Forest& f, const Dataset& xs) {
  const auto b = f.budgets();
  std::vector<int> c = b;
  std::vector<std::size_t> rev;
  for (std::size_t k = 0; k < LatticeShape(b).total_steps(); ++k) {
    std::size_t pick = b.size();
    std::size_t best = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (c[i] == 0) continue;
      --c[i];
      const auto v = testing::reference_correct(f, xs, c);
      ++c[i];
      if (pick == b.size() || v > best) {
        pick = i;
        best = v;
      }
    }
    --c[pick];
    rev.push_back(pick);
  }
  return StepOrder{b, {rev.rbegin(), rev.rend()}};
}

std::uint64_t expected_evaluations(const StepOrder& o) {
  std::vector<int> left = o.budgets;
  std::uint64_t n = 0;
  for (auto t : o.steps) {
    for (int v : left) n += v > 0;
    --left[t];
  }
  return n;
}

}  // namespace

TEST_CASE("worked example: tie-free squirrel steps") {
  const auto ex = worked_example();
  const RoutingTable r(ex.forest, ex.ordering);

  const auto fwd = forward_squirrel(r);
  REQUIRE(is_valid(fwd.order));
  // First step into the second tree: 7/8 against 6/8 and 4/8.
  CHECK(fwd.order.steps.front() == 1);
  CHECK(correct_count(r, LatticeState{{0, 1, 0}}) == 7);

  const auto bwd = backward_squirrel(r);
  REQUIRE(is_valid(bwd.order));
  // Last step in the second tree, from a predecessor with 8/8.
  CHECK(bwd.order.steps.back() == 1);
  CHECK(correct_count(r, LatticeState{{2, 1, 2}}) == 8);
}

TEST_CASE("single-tree forests have one squirrel order") {
  std::mt19937_64 rng(3);
  testing::RandomTreeOptions opt;
  opt.max_depth = 3;
  opt.complete = true;
  const Forest f = testing::random_forest(rng, 1, opt);
  const RoutingTable r(f, testing::random_samples(rng, 10, opt.n_features, 2));
  const StepOrder unique{{3}, {0, 0, 0}};
  CHECK(forward_squirrel(r).order == unique);
  CHECK(backward_squirrel(r).order == unique);
}

TEST_CASE("squirrels match brute-force greedy recomputation") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 300; ++rep) {
    testing::RandomTreeOptions opt;
    opt.max_depth = 1 + static_cast<int>(rng() % 4);
    opt.n_classes = 2 + rng() % 2;
    const Forest f = testing::random_forest(rng, 1 + rng() % 5, opt);
    const Dataset xs = testing::random_samples(rng, 14, opt.n_features, opt.n_classes);
    const RoutingTable r(f, xs);
    const auto fwd = forward_squirrel(r);
    const auto bwd = backward_squirrel(r);
    CHECK(fwd.order == greedy_forward(f, xs));
    CHECK(bwd.order == greedy_backward(f, xs));

    const auto k = fwd.order.total_steps();
    CHECK(fwd.evaluations == expected_evaluations(fwd.order));
    CHECK(fwd.evaluations <= k * f.n_trees());
    // Backward counts trees with steps left to undo, i.e. the reversed walk.
    StepOrder reversed{bwd.order.budgets, {bwd.order.steps.rbegin(), bwd.order.steps.rend()}};
    CHECK(bwd.evaluations == expected_evaluations(reversed));
  }
}

TEST_CASE("two depth-one trees") {
  std::mt19937_64 rng(55);
  for (int rep = 0; rep < 200; ++rep) {
    testing::RandomTreeOptions opt;
    opt.max_depth = 1;
    opt.complete = true;
    const Forest f = testing::random_forest(rng, 2, opt);
    const Dataset xs = testing::random_samples(rng, 8, opt.n_features, 2);
    const RoutingTable r(f, xs);
    const auto a = testing::reference_correct(f, xs, {1, 0});
    const auto b = testing::reference_correct(f, xs, {0, 1});
    CHECK(forward_squirrel(r).order.steps.front() == (b > a ? 1u : 0u));
    CHECK(forward_squirrel(r).evaluations == 3);
  }
}
