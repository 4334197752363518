#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anyforest/forest.hpp"
#include "anyforest/lattice.hpp"
#include "anyforest/routing.hpp"
#include "anyforest/step_order.hpp"

namespace anyforest {

enum class OrderKind {
  kOptimal,
  kUnoptimal,
  kForwardSquirrel,
  kBackwardSquirrel,
  kDepthIE,
  kBreadthIE,
  kDepthEA,
  kBreadthEA,
  kDepthRE,
  kBreadthRE,
  kDepthDrep,
  kBreadthDrep,
  kDepthQwyc,
  kBreadthQwyc,
  kRandom,
};

// CLI / report names: optimal, unoptimal, fsquirrel, bsquirrel, depth-ie,
// breadth-ie, depth-ea, breadth-ea, depth-re, breadth-re, depth-drep,
// breadth-drep, depth-qwyc, breadth-qwyc, random.
std::string_view order_name(OrderKind kind);
std::optional<OrderKind> parse_order_kind(std::string_view name);
const std::vector<OrderKind>& all_order_kinds();

struct GenerateOptions {
  LatticeOptions lattice;
  std::uint64_t random_seed = 0;
};

// Builds an order from the ordering-set routing table. Propagates
// LatticeCapExceeded and UnsupportedError.
StepOrder generate_order(OrderKind kind, const Forest& forest, const RoutingTable& ordering,
                         const GenerateOptions& options = {});

}  // namespace anyforest
