#include "anyforest/serialization.hpp"

#include <fstream>

#include "anyforest/error.hpp"

namespace anyforest {

using nlohmann::json;

namespace {

const json& require(const json& object, const char* key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return object.at(key);
}

template <typename T>
T get_as(const json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

NodeIndex child_index(const json& value, const std::string& where) {
  if (value.is_null()) return kNoChild;
  if (!value.is_number_integer()) throw SchemaError(where + ": child must be an integer or null");
  const auto idx = value.get<std::int64_t>();
  if (idx < 0 || idx > INT32_MAX) throw SchemaError(where + ": child index out of range");
  return static_cast<NodeIndex>(idx);
}

}  // namespace

json export_forest(const Forest& forest) {
  json trees = json::array();
  for (const Tree& tree : forest.trees()) {
    json nodes = json::array();
    for (const Node& node : tree.nodes()) {
      json n;
      if (node.is_leaf()) {
        n["feature"] = nullptr;
        n["threshold"] = nullptr;
        n["left"] = nullptr;
        n["right"] = nullptr;
      } else {
        n["feature"] = node.feature;
        n["threshold"] = node.threshold;
        n["left"] = node.left;
        n["right"] = node.right;
      }
      n["prediction"] = node.prediction;
      n["count"] = node.count;
      nodes.push_back(std::move(n));
    }
    trees.push_back(json{{"nodes", std::move(nodes)}});
  }
  return json{{"version", kForestSchemaVersion},
              {"n_classes", forest.n_classes()},
              {"n_features", forest.n_features()},
              {"class_labels", forest.class_labels()},
              {"trees", std::move(trees)}};
}

Forest import_forest(const json& document) {
  const std::string root = "forest document";
  const auto version = get_as<std::string>(require(document, "version", root), root + ".version");
  if (version != kForestSchemaVersion) {
    throw SchemaError("unsupported forest schema version '" + version + "'");
  }
  const auto n_classes = get_as<std::size_t>(require(document, "n_classes", root), root);
  const auto n_features = get_as<std::size_t>(require(document, "n_features", root), root);
  const auto labels =
      get_as<std::vector<std::string>>(require(document, "class_labels", root), root);
  const json& trees_doc = require(document, "trees", root);
  if (!trees_doc.is_array()) throw SchemaError("'trees' must be an array");

  std::vector<Tree> trees;
  try {
    for (std::size_t t = 0; t < trees_doc.size(); ++t) {
      const std::string tree_where = "tree " + std::to_string(t);
      const json& nodes_doc = require(trees_doc[t], "nodes", tree_where);
      if (!nodes_doc.is_array()) throw SchemaError(tree_where + ": 'nodes' must be an array");
      std::vector<Node> nodes;
      nodes.reserve(nodes_doc.size());
      for (std::size_t i = 0; i < nodes_doc.size(); ++i) {
        const std::string where = tree_where + ", node " + std::to_string(i);
        const json& nd = nodes_doc[i];
        Node node;
        node.prediction =
            get_as<std::vector<double>>(require(nd, "prediction", where), where + ".prediction");
        node.count = get_as<std::uint64_t>(require(nd, "count", where), where + ".count");
        node.left = child_index(require(nd, "left", where), where + ".left");
        node.right = child_index(require(nd, "right", where), where + ".right");
        if (!node.is_leaf()) {
          node.feature = get_as<std::int32_t>(require(nd, "feature", where), where + ".feature");
          node.threshold =
              get_as<double>(require(nd, "threshold", where), where + ".threshold");
        }
        nodes.push_back(std::move(node));
      }
      trees.emplace_back(std::move(nodes), n_classes, n_features);
    }
    return Forest(std::move(trees), n_classes, n_features, labels);
  } catch (const StructuralError& e) {
    throw SchemaError(std::string("invalid forest: ") + e.what());
  }
}

void save_forest(const Forest& forest, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << export_forest(forest).dump(1) << '\n';
}

Forest load_forest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open forest file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("forest file is not valid JSON: ") + e.what());
  }
  return import_forest(doc);
}

}  // namespace anyforest
