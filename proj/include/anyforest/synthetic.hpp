#pragma once

#include <cstddef>
#include <cstdint>

#include "anyforest/dataset.hpp"

namespace anyforest {

// Gaussian class blobs with unit variance and random centres in [-2, 2]^f.
// A fraction `label_noise` of the labels is redrawn uniformly, which keeps
// trees from becoming pure early. Deterministic in `seed`.
Dataset make_blobs(std::size_t n_samples, std::size_t n_features, std::size_t n_classes,
                   double label_noise, std::uint64_t seed);

}  // namespace anyforest
