#include "doctest.h"

#include <random>

#include "anyforest/error.hpp"
#include "anyforest/evaluation.hpp"
#include "anyforest/executor.hpp"
#include "anyforest/lattice.hpp"
#include "anyforest/worked_example.hpp"
#include "test_support.hpp"

using namespace anyforest;

TEST_CASE("nma arithmetic") {
  CHECK(nma(std::vector<double>{0.7, 0.7, 0.7}) == doctest::Approx(1.0));
  CHECK(nma(std::vector<double>{0.5, 1.0}) == 0.75);
  CHECK(curve_mean(std::vector<double>{0.25, 0.75}) == 0.5);
  CHECK_THROWS_AS(nma(std::vector<double>{0.5, 0.0}), DataError);
  CHECK_THROWS_AS(nma(std::vector<double>{}), DataError);
}

TEST_CASE("worked example optimum has NMA 6/7") {
  const auto ex = worked_example();
  const RoutingTable r(ex.forest, ex.ordering);
  const auto curve = accuracy_curve(r, optimal_order(r));
  CHECK(curve.size() == 7);
  CHECK(curve.back() == 1.0);
  CHECK(nma(curve) == doctest::Approx(6.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("curves agree with per-sample execution") {
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    testing::RandomTreeOptions opt;
    opt.max_depth = 1 + static_cast<int>(rng() % 4);
    opt.n_classes = 2 + rng() % 2;
    const Forest f = testing::random_forest(rng, 1 + rng() % 5, opt);
    const Dataset test = testing::random_samples(rng, 15, opt.n_features, opt.n_classes);
    const StepOrder o = random_order(f.budgets(), rng());
    const auto curve = accuracy_curve(f, o, test);
    REQUIRE(curve.size() == o.total_steps() + 1);

    std::size_t full = 0;
    std::size_t roots = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
      full += full_inference(f, test.row(i)) == test.label(i);
      roots += execute(f, o, test.row(i), 0).label == test.label(i);
    }
    const double n = static_cast<double>(test.size());
    CHECK(curve.back() == static_cast<double>(full) / n);
    CHECK(curve.front() == static_cast<double>(roots) / n);

    const std::size_t k = rng() % curve.size();
    std::size_t at_k = 0;
    for (std::size_t i = 0; i < test.size(); ++i) at_k += execute(f, o, test.row(i), k).label == test.label(i);
    CHECK(curve[k] == static_cast<double>(at_k) / n);
  }
}

TEST_CASE("reports round-trip through JSON lines") {
  EvalReport r;
  r.dataset = "wine";
  r.seed = 3;
  r.trees = 2;
  r.max_depth = 1;
  r.order = "bsquirrel";
  r.step_order = StepOrder{{1, 1}, {1, 0}};
  r.curve = {0.5, 0.75, 1.0 / 3.0};
  r.mean_accuracy = curve_mean(r.curve);
  r.final_accuracy = r.curve.back();
  r.nma = nma(r.curve);
  r.ordering_mean_accuracy = 0.1 + 0.2;
  r.ordering_nma = 0.9;
  r.generation_seconds = 1.25e-5;

  EvalReport refused;
  refused.order = "optimal";
  refused.status = "refused";
  refused.message = "state lattice has 9 states, exceeding the cap of 1";

  CHECK(report_from_json(to_json(r)) == r);
  const auto lines = to_json_line(r) + "\n" + to_json_line(refused) + "\n";
  const auto parsed = parse_report_lines(lines);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0] == r);
  CHECK(parsed[1] == refused);
  CHECK(to_json_line(r).find('\n') == std::string::npos);

  auto doc = to_json(r);
  doc["format_version"] = "anyforest-report-0";
  CHECK_THROWS_AS(report_from_json(doc), SchemaError);
  doc = to_json(r);
  doc.erase("curve");
  CHECK_THROWS_AS(report_from_json(doc), SchemaError);
  CHECK_THROWS_AS(parse_report_lines("{oops\n"), SchemaError);
}
