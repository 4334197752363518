#include "anyforest/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "anyforest/error.hpp"

namespace anyforest {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
      cell.push_back(ch);
    } else if (ch == ',' && !quoted) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell.push_back(ch);
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::optional<long> parse_integer(const std::string& s) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::size_t resolve_label_column(const std::string& spec,
                                 const std::vector<std::string>* header,
                                 std::size_t n_columns) {
  if (spec.empty()) return n_columns - 1;
  if (header != nullptr) {
    auto it = std::find(header->begin(), header->end(), spec);
    if (it != header->end()) return static_cast<std::size_t>(it - header->begin());
  }
  if (auto idx = parse_integer(spec)) {
    long i = *idx < 0 ? static_cast<long>(n_columns) + *idx : *idx;
    if (i >= 0 && i < static_cast<long>(n_columns)) return static_cast<std::size_t>(i);
  }
  throw DataError("label column '" + spec + "' not found");
}

}  // namespace

Dataset::Dataset(std::size_t n_features, std::vector<double> features,
                 std::vector<std::size_t> labels,
                 std::vector<std::string> label_map, std::string name)
    : n_features_(n_features),
      features_(std::move(features)),
      labels_(std::move(labels)),
      label_map_(std::move(label_map)),
      name_(std::move(name)) {
  if (features_.size() != labels_.size() * n_features_) {
    throw DataError("feature matrix does not match the label count");
  }
  for (std::size_t y : labels_) {
    if (y >= label_map_.size()) throw DataError("class index outside the label map");
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> features;
  std::vector<std::size_t> labels;
  features.reserve(indices.size() * n_features_);
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw DataError("subset row out of range");
    const auto r = row(i);
    features.insert(features.end(), r.begin(), r.end());
    labels.push_back(labels_[i]);
  }
  return Dataset(n_features_, std::move(features), std::move(labels), label_map_, name_);
}

Dataset parse_csv(const std::string& text, const CsvOptions& options,
                  std::string name) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_row(line));
  }
  if (rows.empty()) throw DataError("dataset is empty");
  const std::size_t n_columns = rows.front().size();
  if (n_columns < 2) throw DataError("need at least one feature and a label column");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n_columns) {
      throw DataError("row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].size()) + " cells, expected " +
                      std::to_string(n_columns));
    }
  }

  bool has_header = options.header == HeaderMode::kPresent;
  if (options.header == HeaderMode::kAuto) {
    // A header is assumed when the first row has non-numeric cells outside
    // the label column.
    const auto label_guess =
        resolve_label_column(options.label_column, &rows.front(), n_columns);
    for (std::size_t c = 0; c < n_columns; ++c) {
      if (c != label_guess && !parse_number(rows.front()[c])) has_header = true;
    }
  }
  const std::vector<std::string>* header = has_header ? &rows.front() : nullptr;
  const std::size_t label_col =
      resolve_label_column(options.label_column, header, n_columns);
  const std::size_t first = has_header ? 1 : 0;
  if (rows.size() <= first) throw DataError("dataset has a header but no rows");

  const std::size_t n_features = n_columns - 1;
  std::vector<double> features;
  std::vector<std::size_t> labels;
  std::vector<std::string> label_map;
  std::map<std::string, std::size_t> index_of;
  features.reserve((rows.size() - first) * n_features);
  for (std::size_t r = first; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < n_columns; ++c) {
      const std::string& cell = rows[r][c];
      if (c == label_col) {
        if (cell.empty()) throw DataError("row " + std::to_string(r + 1) + ": missing label");
        auto [it, inserted] = index_of.try_emplace(cell, label_map.size());
        if (inserted) label_map.push_back(cell);
        labels.push_back(it->second);
        continue;
      }
      auto value = parse_number(cell);
      if (!value) {
        throw DataError("row " + std::to_string(r + 1) + ", column " +
                        std::to_string(c + 1) + ": '" + cell + "' is not numeric");
      }
      features.push_back(*value);
    }
  }
  return Dataset(n_features, std::move(features), std::move(labels),
                 std::move(label_map), std::move(name));
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), options, path.stem().string());
}

DatasetSplits split(const Dataset& dataset, std::uint64_t seed) {
  const std::size_t n = dataset.size();
  if (n < 4) {
    throw DataError("need at least 4 samples to split, got " + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t quarter = n / 4;
  const std::size_t n_train = n - 2 * quarter;
  DatasetSplits out;
  out.seed = seed;
  out.train_rows.assign(order.begin(), order.begin() + static_cast<long>(n_train));
  out.ordering_rows.assign(order.begin() + static_cast<long>(n_train),
                           order.begin() + static_cast<long>(n_train + quarter));
  out.test_rows.assign(order.begin() + static_cast<long>(n_train + quarter), order.end());
  out.train = dataset.subset(out.train_rows);
  out.ordering = dataset.subset(out.ordering_rows);
  out.test = dataset.subset(out.test_rows);
  return out;
}

}  // namespace anyforest
