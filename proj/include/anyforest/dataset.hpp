#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace anyforest {

// Row-major feature matrix with dense class indices.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t n_features, std::vector<double> features,
          std::vector<std::size_t> labels, std::vector<std::string> label_map,
          std::string name = {});

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t n_features() const noexcept { return n_features_; }
  std::size_t n_classes() const noexcept { return label_map_.size(); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * n_features_, n_features_};
  }
  std::size_t label(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& features() const noexcept { return features_; }
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }
  // Class index -> original label text, in order of first appearance.
  const std::vector<std::string>& label_map() const noexcept { return label_map_; }
  const std::string& name() const noexcept { return name_; }

  // Rows at `indices`, keeping the full label map.
  Dataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t n_features_ = 0;
  std::vector<double> features_;
  std::vector<std::size_t> labels_;
  std::vector<std::string> label_map_;
  std::string name_;
};

enum class HeaderMode { kAuto, kPresent, kAbsent };

struct CsvOptions {
  // Column name, or an integer position (negative counts from the end).
  // Empty selects the last column.
  std::string label_column;
  HeaderMode header = HeaderMode::kAuto;
};

// Throws DataError on a missing file, non-numeric or missing feature cells,
// ragged rows, or an empty table.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset parse_csv(const std::string& text, const CsvOptions& options = {},
                  std::string name = {});

struct DatasetSplits {
  Dataset train;
  Dataset ordering;
  Dataset test;
  std::uint64_t seed = 0;
  // Original row indices of each part.
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> ordering_rows;
  std::vector<std::size_t> test_rows;
};

// Seeded uniform shuffle, then 50/25/25. The ordering and test parts get
// floor(n/4) rows each; the remainder goes to train.
DatasetSplits split(const Dataset& dataset, std::uint64_t seed);

}  // namespace anyforest
