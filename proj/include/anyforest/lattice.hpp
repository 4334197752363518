#pragma once

#include <cstdint>

#include "anyforest/routing.hpp"
#include "anyforest/step_order.hpp"

namespace anyforest {

inline constexpr std::uint64_t kDefaultLatticeCap = 50'000'000;

struct LatticeOptions {
  // Largest state lattice the exact searches will touch.
  std::uint64_t cap = kDefaultLatticeCap;
};

enum class Objective {
  kMaximizeMeanAccuracy,  // Optimal Order
  kMinimizeMeanAccuracy,  // Unoptimal Order
};

struct LatticeResult {
  StepOrder order;
  std::uint64_t states = 0;
  // Sum over the K+1 visited states of the correctly classified samples.
  std::uint64_t path_correct = 0;
};

// Exact search over the full state lattice. All complete paths have K edges,
// so maximising the mean accuracy is minimising the summed inaccuracy of the
// states entered. The lattice is layered and acyclic; the implementation
// scores every state once in mixed-radix order and solves the path problem
// with a backward dynamic program over integer correct counts. Among equally
// good paths the lowest tree index is taken first.
//
// Throws LatticeCapExceeded when prod(budget_i + 1) > options.cap.
LatticeResult search_lattice(const RoutingTable& routing, Objective objective,
                             const LatticeOptions& options = {});

StepOrder optimal_order(const RoutingTable& routing, const LatticeOptions& options = {});
StepOrder unoptimal_order(const RoutingTable& routing, const LatticeOptions& options = {});

// Same problem solved with Dijkstra's algorithm over lazily materialised
// states (edge weight = inaccuracy of the entered state for the optimum, its
// accuracy for the pessimum) and a hash-map visited set. Slower; kept as an
// independent route to the optimum.
LatticeResult dijkstra_lattice(const RoutingTable& routing, Objective objective,
                               const LatticeOptions& options = {});

}  // namespace anyforest
