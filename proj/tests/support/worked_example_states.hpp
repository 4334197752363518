#pragma once

#include <array>
#include <cstddef>

namespace anyforest::testing {

struct StateCount {
  std::array<int, 3> counters;
  std::size_t correct;  // of 8 ordering samples
};

// Correct counts of every lattice state of the worked example.
inline constexpr std::array<StateCount, 27> kWorkedExampleStates{{
    {{0, 0, 0}, 4}, {{0, 0, 1}, 4}, {{0, 1, 0}, 7}, {{1, 0, 0}, 6}, {{0, 0, 2}, 6},
    {{0, 1, 1}, 7}, {{0, 2, 0}, 7}, {{1, 0, 1}, 6}, {{1, 1, 0}, 7}, {{2, 0, 0}, 7},
    {{0, 1, 2}, 7}, {{0, 2, 1}, 7}, {{1, 0, 2}, 8}, {{1, 1, 1}, 7}, {{1, 2, 0}, 7},
    {{2, 0, 1}, 7}, {{2, 1, 0}, 7}, {{0, 2, 2}, 7}, {{1, 1, 2}, 7}, {{1, 2, 1}, 7},
    {{2, 0, 2}, 8}, {{2, 1, 1}, 7}, {{2, 2, 0}, 7}, {{1, 2, 2}, 7}, {{2, 1, 2}, 8},
    {{2, 2, 1}, 7}, {{2, 2, 2}, 8},
}};

// The highlighted best path: states 000 010 110 210 211 212 222.
inline constexpr std::array<std::size_t, 6> kWorkedExampleBestPath{1, 0, 0, 2, 2, 1};
inline constexpr std::array<std::size_t, 7> kWorkedExampleBestPathCorrect{4, 7, 7, 7, 7, 8, 8};

}  // namespace anyforest::testing
