#pragma once

#include "anyforest/dataset.hpp"
#include "anyforest/forest.hpp"

namespace anyforest {

// Three complete depth-2 trees and eight ordering samples (four per class).
//
// Every inner node splits on a dedicated indicator feature at 0.5, so the
// feature vectors pin down which node each sample visits:
//
//   tree 0: left {5,6} -> {5} | {6};   right {1,2,3,4,7,8} -> {7} | {1,2,3,4,8}
//   tree 1: left {1,5,6,7,8} -> {5} | {1,6,7,8};   right {2,3,4} -> {2} | {3,4}
//   tree 2: left {1,2,5,6} -> {1,5} | {2,6};   right {3,4,7,8} -> {7,8} | {3,4}
//
// (samples numbered 1..8; 1-4 are class 0, 5-8 class 1). Each node's
// prediction vector is the class distribution of the samples that reach it,
// and its count is their number. Starting from 4/8 correct at the roots, the
// best order reaches a mean accuracy of 6/7.
struct WorkedExample {
  Forest forest;
  Dataset ordering;
};

WorkedExample worked_example();

}  // namespace anyforest
