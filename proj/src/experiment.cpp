#include "anyforest/experiment.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "anyforest/cart.hpp"
#include "anyforest/error.hpp"

namespace anyforest {

using nlohmann::json;

namespace {

template <typename T>
std::vector<T> non_empty_list(const json& doc, const char* key, std::vector<T> fallback) {
  if (!doc.contains(key)) return fallback;
  auto values = doc.at(key).get<std::vector<T>>();
  if (values.empty()) throw ConfigError(std::string("'") + key + "' must not be empty");
  return values;
}

struct Cell {
  std::uint64_t seed;
  std::size_t trees;
  int depth;
};

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("experiment config must be a JSON object");
  ExperimentConfig config;
  try {
    if (!doc.contains("dataset")) throw ConfigError("experiment config needs 'dataset'");
    auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    };
    config.dataset = resolve(doc.at("dataset").get<std::string>());
    config.label_column = doc.value("label_column", std::string{});
    config.seeds = non_empty_list<std::uint64_t>(doc, "seeds", config.seeds);
    config.trees = non_empty_list<std::size_t>(doc, "trees", config.trees);
    config.depths = non_empty_list<int>(doc, "depths", config.depths);
    if (doc.contains("orders")) {
      config.orders.clear();
      for (const auto& name : non_empty_list<std::string>(doc, "orders", {})) {
        auto kind = parse_order_kind(name);
        if (!kind) throw ConfigError("unknown order '" + name + "'");
        config.orders.push_back(*kind);
      }
    }
    config.lattice_cap = doc.value("lattice_cap", config.lattice_cap);
    if (doc.contains("output_dir")) config.output_dir = resolve(doc.at("output_dir").get<std::string>());
    config.parallelism = doc.value("parallelism", config.parallelism);
    config.bootstrap = doc.value("bootstrap", config.bootstrap);
    config.require_optimal = doc.value("require_optimal", config.require_optimal);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid experiment config: ") + e.what());
  }
  for (auto t : config.trees) {
    if (t == 0) throw ConfigError("tree counts must be positive");
  }
  for (auto d : config.depths) {
    if (d < 1) throw ConfigError("depths must be at least 1");
  }
  if (config.parallelism == 0) config.parallelism = 1;
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  return parse_experiment_config(doc, path.parent_path());
}

std::vector<EvalReport> evaluate_orders(const Forest& forest, const DatasetSplits& splits,
                                        const std::vector<OrderKind>& orders,
                                        const GenerateOptions& options) {
  const RoutingTable ordering(forest, splits.ordering);
  const RoutingTable test(forest, splits.test);
  std::vector<EvalReport> out;
  for (OrderKind kind : orders) {
    EvalReport r;
    r.dataset = splits.train.name();
    r.seed = splits.seed;
    r.trees = forest.n_trees();
    r.order = std::string(order_name(kind));
    r.step_order.budgets = forest.budgets();

    const auto start = std::chrono::steady_clock::now();
    try {
      r.step_order = generate_order(kind, forest, ordering, options);
    } catch (const LatticeCapExceeded& e) {
      r.status = "refused";
      r.message = e.what();
    } catch (const UnsupportedError& e) {
      r.status = "unsupported";
      r.message = e.what();
    }
    r.generation_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.ok()) {
      out.push_back(std::move(r));
      continue;
    }

    r.curve = accuracy_curve(test, r.step_order);
    r.mean_accuracy = curve_mean(r.curve);
    r.final_accuracy = r.curve.back();
    r.nma = r.final_accuracy > 0.0 ? nma(r.curve) : 0.0;
    const auto ordering_curve = accuracy_curve(ordering, r.step_order);
    r.ordering_mean_accuracy = curve_mean(ordering_curve);
    r.ordering_nma = ordering_curve.back() > 0.0 ? nma(ordering_curve) : 0.0;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<EvalReport> run_experiment(const ExperimentConfig& config, const Dataset& data) {
  std::vector<Cell> cells;
  for (auto seed : config.seeds) {
    for (auto t : config.trees) {
      for (auto d : config.depths) cells.push_back({seed, t, d});
    }
  }

  std::vector<std::vector<EvalReport>> results(cells.size());
  auto run_cell = [&](std::size_t i) {
    const Cell& cell = cells[i];
    const DatasetSplits splits = split(data, cell.seed);
    TrainConfig train;
    train.n_trees = cell.trees;
    train.max_depth = cell.depth;
    train.seed = cell.seed;
    train.bootstrap = config.bootstrap;
    const Forest forest = train_forest(splits.train, train);
    GenerateOptions options;
    options.lattice.cap = config.lattice_cap;
    options.random_seed = cell.seed;
    results[i] = evaluate_orders(forest, splits, config.orders, options);
    for (auto& r : results[i]) r.max_depth = cell.depth;
  };

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        run_cell(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = cells.size();
      }
    }
  };

  const auto n_threads = std::min(config.parallelism, cells.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<EvalReport> out;
  for (auto& block : results) {
    for (auto& r : block) out.push_back(std::move(r));
  }
  return out;
}

std::vector<EvalReport> run_experiment(const ExperimentConfig& config) {
  CsvOptions csv;
  csv.label_column = config.label_column;
  const Dataset data = load_csv(config.dataset, csv);
  auto reports = run_experiment(config, data);
  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    std::ofstream out(config.output_dir / "reports.jsonl");
    if (!out) throw Error("cannot write reports to " + config.output_dir.string());
    for (const auto& r : reports) out << to_json_line(r) << '\n';
  }
  return reports;
}

}  // namespace anyforest
