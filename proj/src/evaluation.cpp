#include "anyforest/evaluation.hpp"

#include <sstream>

#include "anyforest/error.hpp"

namespace anyforest {

using nlohmann::json;

std::vector<double> accuracy_curve(const RoutingTable& routing, const StepOrder& order) {
  const auto counts = path_correct_counts(routing, order);
  std::vector<double> curve;
  curve.reserve(counts.size());
  const auto n = static_cast<double>(routing.n_samples());
  for (auto c : counts) curve.push_back(static_cast<double>(c) / n);
  return curve;
}

std::vector<double> accuracy_curve(const Forest& forest, const StepOrder& order,
                                   const Dataset& samples) {
  return accuracy_curve(RoutingTable(forest, samples), order);
}

double curve_mean(std::span<const double> curve) {
  if (curve.empty()) throw DataError("empty accuracy curve");
  double sum = 0.0;
  for (double v : curve) sum += v;
  return sum / static_cast<double>(curve.size());
}

double nma(std::span<const double> curve) {
  if (curve.empty()) throw DataError("empty accuracy curve");
  const double final_accuracy = curve.back();
  if (!(final_accuracy > 0.0)) throw DataError("NMA undefined: final accuracy is zero");
  return curve_mean(curve) / final_accuracy;
}

json to_json(const EvalReport& r) {
  return json{{"format_version", r.format_version},
              {"nma_formula", r.nma_formula},
              {"dataset", r.dataset},
              {"seed", r.seed},
              {"trees", r.trees},
              {"max_depth", r.max_depth},
              {"order", r.order},
              {"status", r.status},
              {"message", r.message},
              {"step_order", {{"budgets", r.step_order.budgets}, {"steps", r.step_order.steps}}},
              {"curve", r.curve},
              {"mean_accuracy", r.mean_accuracy},
              {"final_accuracy", r.final_accuracy},
              {"nma", r.nma},
              {"ordering_mean_accuracy", r.ordering_mean_accuracy},
              {"ordering_nma", r.ordering_nma},
              {"generation_seconds", r.generation_seconds}};
}

EvalReport report_from_json(const json& doc) {
  try {
    EvalReport r;
    r.format_version = doc.at("format_version").get<std::string>();
    if (r.format_version != kReportFormatVersion) {
      throw SchemaError("unsupported report version '" + r.format_version + "'");
    }
    r.nma_formula = doc.at("nma_formula").get<std::string>();
    r.dataset = doc.at("dataset").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.trees = doc.at("trees").get<std::size_t>();
    r.max_depth = doc.at("max_depth").get<int>();
    r.order = doc.at("order").get<std::string>();
    r.status = doc.at("status").get<std::string>();
    r.message = doc.at("message").get<std::string>();
    r.step_order.budgets = doc.at("step_order").at("budgets").get<std::vector<int>>();
    r.step_order.steps = doc.at("step_order").at("steps").get<std::vector<std::size_t>>();
    r.curve = doc.at("curve").get<std::vector<double>>();
    r.mean_accuracy = doc.at("mean_accuracy").get<double>();
    r.final_accuracy = doc.at("final_accuracy").get<double>();
    r.nma = doc.at("nma").get<double>();
    r.ordering_mean_accuracy = doc.at("ordering_mean_accuracy").get<double>();
    r.ordering_nma = doc.at("ordering_nma").get<double>();
    r.generation_seconds = doc.at("generation_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed report: ") + e.what());
  }
}

std::string to_json_line(const EvalReport& report) { return to_json(report).dump(); }

std::vector<EvalReport> parse_report_lines(const std::string& text) {
  std::vector<EvalReport> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(report_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw SchemaError(std::string("report line is not JSON: ") + e.what());
    }
  }
  return out;
}

}  // namespace anyforest
