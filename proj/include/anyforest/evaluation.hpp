#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "anyforest/dataset.hpp"
#include "anyforest/forest.hpp"
#include "anyforest/routing.hpp"
#include "anyforest/step_order.hpp"

namespace anyforest {

inline constexpr const char* kReportFormatVersion = "anyforest-report-1";
inline constexpr const char* kNmaFormula = "nma-v1";

// Accuracy on `samples` after every abort point 0..K.
std::vector<double> accuracy_curve(const Forest& forest, const StepOrder& order,
                                   const Dataset& samples);
std::vector<double> accuracy_curve(const RoutingTable& routing, const StepOrder& order);

double curve_mean(std::span<const double> curve);

// Normalised mean accuracy: mean of the curve divided by its last entry.
// 1.0 means the final accuracy is available at every abort point. Throws
// DataError if the final accuracy is zero.
double nma(std::span<const double> curve);

// One (seed, trees, depth, order) cell of an experiment.
struct EvalReport {
  std::string format_version = kReportFormatVersion;
  std::string nma_formula = kNmaFormula;
  std::string dataset;
  std::uint64_t seed = 0;
  std::size_t trees = 0;
  int max_depth = 0;
  std::string order;
  // "ok", "refused" (lattice cap) or "unsupported" (e.g. QWYC on multiclass).
  std::string status = "ok";
  std::string message;
  StepOrder step_order;
  // Test split.
  std::vector<double> curve;
  double mean_accuracy = 0.0;
  double final_accuracy = 0.0;
  double nma = 0.0;
  // Ordering split, which the generators optimised against.
  double ordering_mean_accuracy = 0.0;
  double ordering_nma = 0.0;
  double generation_seconds = 0.0;

  bool ok() const noexcept { return status == "ok"; }
  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

nlohmann::json to_json(const EvalReport& report);
// Throws SchemaError on missing fields or an unknown format version.
EvalReport report_from_json(const nlohmann::json& doc);

std::string to_json_line(const EvalReport& report);
std::vector<EvalReport> parse_report_lines(const std::string& text);

}  // namespace anyforest
