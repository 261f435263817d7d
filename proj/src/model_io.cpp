#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sngbm/boosting.hpp"
#include "sngbm/errors.hpp"

namespace sngbm {

namespace {

using Json = nlohmann::ordered_json;

Json tree_to_json(const RegressionTree& tree) {
  Json nodes = Json::array();
  for (const TreeNode& node : tree.nodes) {
    Json j;
    if (node.is_leaf()) {
      j["leaf_value"] = node.value;
      j["cover"] = node.cover;
    } else {
      j["feature"] = node.feature;
      j["threshold"] = node.threshold;
      j["left"] = node.left;
      j["right"] = node.right;
      j["gain"] = node.gain;
      j["cover"] = node.cover;
    }
    nodes.push_back(std::move(j));
  }
  return nodes;
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw LoadError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw LoadError(join(path, key), "missing field");
  return *it;
}

double number_field(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_number()) throw LoadError(join(path, key), "expected a number");
  return v.get<double>();
}

long long integer_field(const Json& obj, const char* key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_number_integer()) throw LoadError(join(path, key), "expected an integer");
  return v.get<long long>();
}

RegressionTree tree_from_json(const Json& j, const std::string& path, std::size_t num_features) {
  if (!j.is_array()) throw LoadError(path, "expected a node array");
  if (j.empty()) throw LoadError(path, "tree has no nodes");
  RegressionTree tree;
  tree.nodes.reserve(j.size());
  const auto size = static_cast<long long>(j.size());
  std::vector<int> parents(j.size(), 0);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    const Json& jn = j[i];
    TreeNode node;
    const long long cover = integer_field(jn, "cover", at);
    if (cover < 0) throw LoadError(at + ".cover", "negative cover");
    node.cover = static_cast<std::size_t>(cover);
    if (jn.is_object() && jn.contains("leaf_value")) {
      node.value = number_field(jn, "leaf_value", at);
    } else {
      const long long feature = integer_field(jn, "feature", at);
      if (feature < 0 || static_cast<std::size_t>(feature) >= num_features) {
        throw LoadError(at + ".feature", "feature index " + std::to_string(feature) +
                                             " does not match the " +
                                             std::to_string(num_features) + " feature names");
      }
      node.feature = static_cast<int>(feature);
      node.threshold = number_field(jn, "threshold", at);
      node.gain = number_field(jn, "gain", at);
      const long long left = integer_field(jn, "left", at);
      const long long right = integer_field(jn, "right", at);
      const auto ii = static_cast<long long>(i);
      if (left <= ii || left >= size) throw LoadError(at + ".left", "child index out of range");
      if (right <= ii || right >= size) throw LoadError(at + ".right", "child index out of range");
      node.left = static_cast<int>(left);
      node.right = static_cast<int>(right);
      ++parents[static_cast<std::size_t>(left)];
      ++parents[static_cast<std::size_t>(right)];
    }
    tree.nodes.push_back(node);
  }
  for (std::size_t i = 1; i < parents.size(); ++i) {
    if (parents[i] != 1) {
      throw LoadError(path + "[" + std::to_string(i) + "]",
                      "node must have exactly one parent");
    }
  }
  return tree;
}

}  // namespace

std::string save_model(const BoostModel& model) {
  Json doc;
  doc["format_version"] = model.format_version;
  doc["eta"] = model.eta;
  doc["init_mu"] = model.init_mu;
  doc["init_psi"] = model.init_psi;
  doc["log_transform"] = model.log_transform;
  doc["target"] = model.target;
  doc["feature_names"] = model.feature_names;
  Json iterations = Json::array();
  for (const IterationRecord& it : model.iterations) {
    Json j;
    j["rho"] = it.rho;
    j["tree_mu"] = tree_to_json(it.tree_mu);
    j["tree_psi"] = tree_to_json(it.tree_psi);
    iterations.push_back(std::move(j));
  }
  doc["iterations"] = std::move(iterations);
  return doc.dump() + "\n";
}

BoostModel load_model(const std::string& document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw LoadError("", std::string("malformed model document: ") + e.what());
  }
  if (!doc.is_object()) throw LoadError("", "model document must be a JSON object");

  BoostModel model;
  const long long version = integer_field(doc, "format_version", "");
  if (version != kModelFormatVersion) {
    throw LoadError("format_version", "unsupported format version " + std::to_string(version));
  }
  model.format_version = static_cast<int>(version);
  model.eta = number_field(doc, "eta", "");
  if (!(model.eta > 0.0 && model.eta <= 1.0)) throw LoadError("eta", "must be in (0, 1]");
  model.init_mu = number_field(doc, "init_mu", "");
  model.init_psi = number_field(doc, "init_psi", "");
  if (doc.contains("log_transform")) {
    const Json& lt = doc["log_transform"];
    if (!lt.is_boolean()) throw LoadError("log_transform", "expected a boolean");
    model.log_transform = lt.get<bool>();
  }

  if (doc.contains("target")) {
    const Json& t = doc["target"];
    if (!t.is_string()) throw LoadError("target", "expected a string");
    model.target = t.get<std::string>();
  }

  const Json& names = field(doc, "feature_names", "");
  if (!names.is_array()) throw LoadError("feature_names", "expected an array");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!names[i].is_string()) {
      throw LoadError("feature_names[" + std::to_string(i) + "]", "expected a string");
    }
    model.feature_names.push_back(names[i].get<std::string>());
  }
  if (model.feature_names.empty()) throw LoadError("feature_names", "no features");

  const Json& iterations = field(doc, "iterations", "");
  if (!iterations.is_array()) throw LoadError("iterations", "expected an array");
  model.iterations.reserve(iterations.size());
  for (std::size_t m = 0; m < iterations.size(); ++m) {
    const std::string at = "iterations[" + std::to_string(m) + "]";
    const Json& j = iterations[m];
    if (!j.is_object()) throw LoadError(at, "expected an object");
    IterationRecord record;
    record.rho = number_field(j, "rho", at);
    if (!(record.rho >= 0.0)) throw LoadError(at + ".rho", "must be non-negative");
    record.tree_mu = tree_from_json(field(j, "tree_mu", at), at + ".tree_mu", model.num_features());
    record.tree_psi =
        tree_from_json(field(j, "tree_psi", at), at + ".tree_psi", model.num_features());
    // One shared rho per iteration; anything else is a different format.
    if (j.size() != 3) throw LoadError(at, "expected exactly {rho, tree_mu, tree_psi}");
    model.iterations.push_back(std::move(record));
  }
  return model;
}

void save_model_file(const BoostModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << save_model(model);
  if (!out) throw Error("failed writing '" + path + "'");
}

BoostModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("", "cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_model(buffer.str());
}

}  // namespace sngbm
