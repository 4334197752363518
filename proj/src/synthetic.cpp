#include "anyforest/synthetic.hpp"

#include <random>
#include <string>

#include "anyforest/error.hpp"

namespace anyforest {

Dataset make_blobs(std::size_t n_samples, std::size_t n_features, std::size_t n_classes,
                   double label_noise, std::uint64_t seed) {
  if (n_features == 0 || n_classes == 0) throw ConfigError("blobs need features and classes");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-2.0, 2.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any_class(0, n_classes - 1);

  std::vector<double> centres(n_classes * n_features);
  for (auto& c : centres) c = centre(rng);

  std::vector<double> features;
  std::vector<std::size_t> labels;
  features.reserve(n_samples * n_features);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::size_t y = i % n_classes;
    for (std::size_t f = 0; f < n_features; ++f) {
      features.push_back(centres[y * n_features + f] + noise(rng));
    }
    labels.push_back(unit(rng) < label_noise ? any_class(rng) : y);
  }
  // Dense, first-appearance label map like a loaded CSV would have.
  std::vector<std::size_t> remap(n_classes, n_classes);
  std::vector<std::string> label_map;
  for (auto& y : labels) {
    if (remap[y] == n_classes) {
      remap[y] = label_map.size();
      label_map.push_back("c" + std::to_string(y));
    }
    y = remap[y];
  }
  return Dataset(n_features, std::move(features), std::move(labels), std::move(label_map),
                 "blobs");
}

}  // namespace anyforest
