#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "anyforest/dataset.hpp"
#include "anyforest/evaluation.hpp"
#include "anyforest/generators.hpp"
#include "anyforest/lattice.hpp"

namespace anyforest {

struct ExperimentConfig {
  std::filesystem::path dataset;
  std::string label_column;
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::size_t> trees{4};
  std::vector<int> depths{4};
  std::vector<OrderKind> orders = all_order_kinds();
  std::uint64_t lattice_cap = kDefaultLatticeCap;
  std::filesystem::path output_dir;
  std::size_t parallelism = 1;
  bool bootstrap = true;
  // Treat a lattice-cap refusal of the optimal order as a failure.
  bool require_optimal = false;
};

// JSON config, e.g.
//   {"dataset": "data/wine.csv", "label_column": "label", "seeds": [0, 1],
//    "trees": [4, 5], "depths": [4], "orders": ["optimal", "bsquirrel"],
//    "lattice_cap": 50000000, "output_dir": "out", "parallelism": 2}
// Relative paths resolve against `base_dir`. Throws ConfigError.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Evaluates every order for one trained forest: generation on the ordering
// split (timed), curves on the test split.
std::vector<EvalReport> evaluate_orders(const Forest& forest, const DatasetSplits& splits,
                                        const std::vector<OrderKind>& orders,
                                        const GenerateOptions& options);

// Runs the {seed} x {trees} x {depth} x {order} grid on an in-memory dataset.
// Reports come back in grid order regardless of parallelism.
std::vector<EvalReport> run_experiment(const ExperimentConfig& config, const Dataset& data);

// Loads the configured dataset, runs the grid and, if output_dir is set,
// writes <output_dir>/reports.jsonl. Throws DataError on load failures.
std::vector<EvalReport> run_experiment(const ExperimentConfig& config);

}  // namespace anyforest
