#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "anyforest/forest.hpp"
#include "anyforest/routing.hpp"
#include "anyforest/step_order.hpp"

namespace anyforest {

// Tree sequences for the Depth/Breadth orders, borrowed from ensemble
// pruning. Every generator scores trees on the routing table's sample set
// (the ordering split) using fully executed trees, and places all trees.

// Correctly classified samples per tree when executed to its leaf.
std::vector<std::size_t> individual_correct(const RoutingTable& routing);

// Ranking by individual accuracy, descending; ties by tree index.
TreeSequence sequence_individual_error(const RoutingTable& routing);

// Ranking by accuracy + lambda * (fraction of samples where the tree
// disagrees with the full ensemble), descending; ties by tree index.
TreeSequence sequence_error_ambiguity(const RoutingTable& routing, double lambda = 0.5);

// Greedy: each round appends the tree that maximises the accuracy of the
// selected prefix's combined prediction; ties by tree index.
TreeSequence sequence_reduced_error(const RoutingTable& routing);

// Greedy: starts with the best individual tree, then appends the tree
// minimising error - rho * disagreement with the current prefix ensemble;
// ties by tree index.
TreeSequence sequence_drep(const RoutingTable& routing, double rho = 0.5);

// Binary classification only (UnsupportedError otherwise). Each round appends
// the tree after which the most samples have an irreversible decision: the
// |class-0 minus class-1| margin of the placed trees exceeds the largest
// margin the unplaced trees could still add. Ties go to the higher individual
// accuracy, then the lower index.
TreeSequence sequence_qwyc(const Forest& forest, const RoutingTable& routing);

// Per sample: whether the placed trees' leaf margin already fixes the final
// binary decision regardless of where the remaining trees end up.
std::vector<bool> qwyc_decided(const Forest& forest, const RoutingTable& routing,
                               std::span<const std::size_t> placed);

}  // namespace anyforest
