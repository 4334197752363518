#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "anyforest/forest.hpp"

namespace anyforest {

inline constexpr const char* kForestSchemaVersion = "anyforest-1";

// {version, n_classes, n_features, class_labels,
//  trees: [{nodes: [{feature, threshold, left, right, prediction, count}]}]}
// Leaves carry null children and null split fields.
nlohmann::json export_forest(const Forest& forest);

// Rejects (never repairs) documents with a wrong version, missing or
// mistyped fields, or a forest that violates the structural invariants.
// Throws SchemaError.
Forest import_forest(const nlohmann::json& document);

void save_forest(const Forest& forest, const std::filesystem::path& path);
Forest load_forest(const std::filesystem::path& path);

}  // namespace anyforest
