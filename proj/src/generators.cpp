#include "anyforest/generators.hpp"

#include <array>
#include <utility>

#include "anyforest/sequences.hpp"
#include "anyforest/squirrel.hpp"

namespace anyforest {

namespace {

constexpr std::array<std::pair<OrderKind, std::string_view>, 15> kNames{{
    {OrderKind::kOptimal, "optimal"},
    {OrderKind::kUnoptimal, "unoptimal"},
    {OrderKind::kForwardSquirrel, "fsquirrel"},
    {OrderKind::kBackwardSquirrel, "bsquirrel"},
    {OrderKind::kDepthIE, "depth-ie"},
    {OrderKind::kBreadthIE, "breadth-ie"},
    {OrderKind::kDepthEA, "depth-ea"},
    {OrderKind::kBreadthEA, "breadth-ea"},
    {OrderKind::kDepthRE, "depth-re"},
    {OrderKind::kBreadthRE, "breadth-re"},
    {OrderKind::kDepthDrep, "depth-drep"},
    {OrderKind::kBreadthDrep, "breadth-drep"},
    {OrderKind::kDepthQwyc, "depth-qwyc"},
    {OrderKind::kBreadthQwyc, "breadth-qwyc"},
    {OrderKind::kRandom, "random"},
}};

}  // namespace

std::string_view order_name(OrderKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<OrderKind> parse_order_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<OrderKind>& all_order_kinds() {
  static const std::vector<OrderKind> kinds = [] {
    std::vector<OrderKind> out;
    for (const auto& entry : kNames) out.push_back(entry.first);
    return out;
  }();
  return kinds;
}

StepOrder generate_order(OrderKind kind, const Forest& forest, const RoutingTable& ordering,
                         const GenerateOptions& options) {
  const auto& budgets = ordering.budgets();
  switch (kind) {
    case OrderKind::kOptimal:
      return optimal_order(ordering, options.lattice);
    case OrderKind::kUnoptimal:
      return unoptimal_order(ordering, options.lattice);
    case OrderKind::kForwardSquirrel:
      return forward_squirrel(ordering).order;
    case OrderKind::kBackwardSquirrel:
      return backward_squirrel(ordering).order;
    case OrderKind::kDepthIE:
      return depth_order(sequence_individual_error(ordering), budgets);
    case OrderKind::kBreadthIE:
      return breadth_order(sequence_individual_error(ordering), budgets);
    case OrderKind::kDepthEA:
      return depth_order(sequence_error_ambiguity(ordering), budgets);
    case OrderKind::kBreadthEA:
      return breadth_order(sequence_error_ambiguity(ordering), budgets);
    case OrderKind::kDepthRE:
      return depth_order(sequence_reduced_error(ordering), budgets);
    case OrderKind::kBreadthRE:
      return breadth_order(sequence_reduced_error(ordering), budgets);
    case OrderKind::kDepthDrep:
      return depth_order(sequence_drep(ordering), budgets);
    case OrderKind::kBreadthDrep:
      return breadth_order(sequence_drep(ordering), budgets);
    case OrderKind::kDepthQwyc:
      return depth_order(sequence_qwyc(forest, ordering), budgets);
    case OrderKind::kBreadthQwyc:
      return breadth_order(sequence_qwyc(forest, ordering), budgets);
    case OrderKind::kRandom:
      return random_order(budgets, options.random_seed);
  }
  return {};
}

}  // namespace anyforest
