#pragma once

#include <cstdint>

#include "anyforest/routing.hpp"
#include "anyforest/step_order.hpp"

namespace anyforest {

struct SquirrelResult {
  StepOrder order;
  // Candidate states scored: one per non-exhausted tree per round, so at most
  // K * t in total.
  std::uint64_t evaluations = 0;
};

// Greedy walk from the all-zero state: each round advances the tree whose
// successor state has the highest accuracy (lowest tree index on ties).
SquirrelResult forward_squirrel(const RoutingTable& routing);

// Greedy walk back from the final state: each round retracts the tree whose
// predecessor state has the highest accuracy (lowest tree index on ties). The
// retracted trees, read in reverse, form the order.
SquirrelResult backward_squirrel(const RoutingTable& routing);

}  // namespace anyforest
