// anyforest: train forests, generate step orders and measure anytime accuracy.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 data error,
// 3 lattice-cap refusal of an explicitly requested exact order,
// 4 oracle mismatch.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "anyforest/cart.hpp"
#include "anyforest/error.hpp"
#include "anyforest/evaluation.hpp"
#include "anyforest/experiment.hpp"
#include "anyforest/generators.hpp"
#include "anyforest/lattice.hpp"
#include "anyforest/serialization.hpp"
#include "anyforest/step_order.hpp"
#include "anyforest/synthetic.hpp"
#include "anyforest/worked_example.hpp"

namespace {

using namespace anyforest;
using nlohmann::json;

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitLatticeCap = 3;
constexpr int kExitOracleMismatch = 4;

struct DataArgs {
  std::string path;
  std::string label;
  std::uint64_t seed = 0;
  bool whole = false;
};

void add_data_options(CLI::App* cmd, DataArgs& args, bool required = true) {
  auto* opt = cmd->add_option("--data", args.path, "CSV dataset");
  if (required) opt->required();
  cmd->add_option("--label", args.label, "label column name or index (default: last)");
  cmd->add_option("--seed", args.seed, "split/training seed");
  cmd->add_flag("--whole", args.whole, "use the whole dataset as every split");
}

DatasetSplits load_splits(const DataArgs& args) {
  CsvOptions csv;
  csv.label_column = args.label;
  Dataset data = load_csv(args.path, csv);
  if (!args.whole) return split(data, args.seed);
  std::vector<std::size_t> rows(data.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return {data, data, data, args.seed, rows, rows, rows};
}

FeatureSubsample parse_features(const std::string& text) {
  if (text == "sqrt") return FeatureSubsample::sqrt();
  if (text == "all") return FeatureSubsample::all();
  try {
    return FeatureSubsample::fixed(std::stoul(text));
  } catch (const std::exception&) {
    throw ConfigError("--features expects sqrt, all or a count");
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

int run_oracle(const Forest& forest, const RoutingTable& ordering, std::uint64_t cap) {
  const auto budgets = forest.budgets();
  const auto count = count_orders(budgets);
  std::uint64_t best = 0;
  std::uint64_t worst = UINT64_MAX;
  OrderEnumerator orders(budgets);
  std::uint64_t seen = 0;
  do {
    const auto total = path_correct_total(ordering, orders.current());
    best = std::max(best, total);
    worst = std::min(worst, total);
    ++seen;
  } while (orders.advance());

  LatticeOptions options;
  options.cap = cap;
  const auto opt = search_lattice(ordering, Objective::kMaximizeMeanAccuracy, options);
  const auto unopt = search_lattice(ordering, Objective::kMinimizeMeanAccuracy, options);
  const auto opt_total = path_correct_total(ordering, opt.order);
  const auto unopt_total = path_correct_total(ordering, unopt.order);
  const double denom = static_cast<double>(opt.order.steps.size() + 1) *
                       static_cast<double>(ordering.n_samples());
  const bool ok = seen == count && opt_total == best && unopt_total == worst;
  json out{{"budgets", budgets},
           {"orders_expected", count},
           {"orders_enumerated", seen},
           {"enumerated_best_mean_accuracy", static_cast<double>(best) / denom},
           {"enumerated_worst_mean_accuracy", static_cast<double>(worst) / denom},
           {"optimal_mean_accuracy", static_cast<double>(opt_total) / denom},
           {"unoptimal_mean_accuracy", static_cast<double>(unopt_total) / denom},
           {"match", ok}};
  std::cout << out.dump(2) << '\n';
  return ok ? 0 : kExitOracleMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime random-forest inference: step-order generation and evaluation"};
  app.require_subcommand(1);

  // train
  DataArgs train_data;
  std::size_t trees = 10;
  int depth = 5;
  bool no_bootstrap = false;
  std::string features = "sqrt";
  std::string train_out;
  auto* train = app.add_subcommand("train", "train a forest on the train split of a dataset");
  add_data_options(train, train_data);
  train->add_option("--trees", trees, "number of trees")->check(CLI::PositiveNumber);
  train->add_option("--depth", depth, "maximum depth")->check(CLI::PositiveNumber);
  train->add_flag("--no-bootstrap", no_bootstrap, "grow every tree on the full train split");
  train->add_option("--features", features, "features per split: sqrt, all or a count");
  train->add_option("--out", train_out, "forest JSON output")->required();

  // order
  DataArgs order_data;
  std::string order_forest;
  std::string order_kind = "bsquirrel";
  std::uint64_t lattice_cap = kDefaultLatticeCap;
  std::string order_out;
  auto* order = app.add_subcommand("order", "generate a step order on the ordering split");
  order->add_option("--forest", order_forest, "forest JSON")->required();
  add_data_options(order, order_data);
  order->add_option("--order", order_kind, "generator name");
  order->add_option("--lattice-cap", lattice_cap, "largest lattice the exact search may touch");
  order->add_option("--out", order_out, "step-order file (default: stdout)");

  // run
  DataArgs run_data;
  std::string run_forest;
  std::string run_order;
  std::string run_out;
  auto* run = app.add_subcommand("run", "accuracy-vs-steps curve and NMA on the test split");
  run->add_option("--forest", run_forest, "forest JSON")->required();
  run->add_option("--order-file", run_order, "step-order file")->required();
  add_data_options(run, run_data);
  run->add_option("--out", run_out, "JSON output (default: stdout)");

  // experiment
  std::string config_path;
  std::string experiment_out;
  auto* experiment = app.add_subcommand("experiment", "run a configured experiment grid");
  experiment->add_option("--config", config_path, "experiment config JSON")->required();
  experiment->add_option("--out", experiment_out, "override the report directory");

  // oracle
  DataArgs oracle_data;
  std::string oracle_forest;
  std::size_t oracle_trees = 3;
  int oracle_depth = 2;
  std::uint64_t oracle_cap = kDefaultLatticeCap;
  auto* oracle = app.add_subcommand(
      "oracle", "check optimal/unoptimal against exhaustive enumeration on a tiny forest");
  oracle->add_option("--forest", oracle_forest, "forest JSON (default: train a synthetic one)");
  add_data_options(oracle, oracle_data, false);
  oracle->add_option("--trees", oracle_trees, "trees of the synthetic forest");
  oracle->add_option("--depth", oracle_depth, "depth of the synthetic forest");
  oracle->add_option("--lattice-cap", oracle_cap, "largest lattice the exact search may touch");

  // fixture
  std::string fixture_dir = ".";
  auto* fixture = app.add_subcommand("fixture", "write the worked-example forest and samples");
  fixture->add_option("--out", fixture_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      const auto splits = load_splits(train_data);
      TrainConfig config;
      config.n_trees = trees;
      config.max_depth = depth;
      config.seed = train_data.seed;
      config.bootstrap = !no_bootstrap;
      config.features = parse_features(features);
      save_forest(train_forest(splits.train, config), train_out);
    } else if (*order) {
      const auto kind = parse_order_kind(order_kind);
      if (!kind) throw ConfigError("unknown order '" + order_kind + "'");
      const Forest forest = load_forest(order_forest);
      const auto splits = load_splits(order_data);
      const RoutingTable routing(forest, splits.ordering);
      GenerateOptions options;
      options.lattice.cap = lattice_cap;
      options.random_seed = order_data.seed;
      const StepOrder steps = generate_order(*kind, forest, routing, options);
      write_text(order_out, format_step_order(steps));
      std::cerr << order_kind << ": " << steps.steps.size()
                << " steps, ordering-set mean accuracy " << mean_accuracy(routing, steps) << '\n';
    } else if (*run) {
      const Forest forest = load_forest(run_forest);
      const StepOrder steps = load_step_order(run_order);
      const auto splits = load_splits(run_data);
      const auto curve = accuracy_curve(forest, steps, splits.test);
      json out{{"curve", curve},
               {"mean_accuracy", curve_mean(curve)},
               {"final_accuracy", curve.back()},
               {"nma", curve.back() > 0.0 ? nma(curve) : 0.0},
               {"nma_formula", kNmaFormula}};
      write_text(run_out, out.dump(2) + "\n");
    } else if (*experiment) {
      auto config = load_experiment_config(config_path);
      if (!experiment_out.empty()) config.output_dir = experiment_out;
      const auto reports = run_experiment(config);
      std::size_t refused = 0;
      for (const auto& r : reports) {
        if (r.status == "refused") ++refused;
        std::cerr << r.dataset << " seed=" << r.seed << " t=" << r.trees << " d=" << r.max_depth
                  << ' ' << r.order << ": "
                  << (r.ok() ? "nma=" + std::to_string(r.nma) : r.status) << '\n';
      }
      if (refused > 0 && config.require_optimal) {
        std::cerr << refused << " exact orders refused at the lattice cap\n";
        return kExitLatticeCap;
      }
    } else if (*oracle) {
      if (!oracle_forest.empty()) {
        if (oracle_data.path.empty()) throw ConfigError("--forest needs --data");
        const Forest forest = load_forest(oracle_forest);
        const auto splits = load_splits(oracle_data);
        return run_oracle(forest, RoutingTable(forest, splits.ordering), oracle_cap);
      }
      const Dataset data = make_blobs(128, 4, 2, 0.2, oracle_data.seed);
      const auto splits = split(data, oracle_data.seed);
      TrainConfig config;
      config.n_trees = oracle_trees;
      config.max_depth = oracle_depth;
      config.seed = oracle_data.seed;
      const Forest forest = train_forest(splits.train, config);
      return run_oracle(forest, RoutingTable(forest, splits.ordering), oracle_cap);
    } else if (*fixture) {
      const auto example = worked_example();
      std::filesystem::create_directories(fixture_dir);
      save_forest(example.forest, std::filesystem::path(fixture_dir) / "worked_example_forest.json");
      std::ofstream csv(std::filesystem::path(fixture_dir) / "worked_example_ordering.csv");
      for (std::size_t f = 0; f < example.ordering.n_features(); ++f) csv << 'f' << f << ',';
      csv << "label\n";
      for (std::size_t i = 0; i < example.ordering.size(); ++i) {
        for (double v : example.ordering.row(i)) csv << v << ',';
        csv << example.ordering.label_map()[example.ordering.label(i)] << '\n';
      }
    }
  } catch (const LatticeCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitLatticeCap;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
