// Copyright 2026 The Thermoforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermoforge/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "thermoforge/errors.hpp"
#include "thermoforge/random.hpp"

namespace thermoforge::cli {

using nlohmann::json;

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::kRegress: return "regress";
    case Suite::kPinn: return "pinn";
    case Suite::kClassify: return "classify";
    case Suite::kPlots: return "plots";
    case Suite::kAll: return "all";
  }
  return "?";
}

Suite parse_suite(const std::string& name) {
  for (Suite s : {Suite::kRegress, Suite::kPinn, Suite::kClassify, Suite::kPlots, Suite::kAll}) {
    if (name == suite_name(s)) return s;
  }
  throw ConfigError("/suite", "unknown suite '" + name + "'");
}

namespace {

json svm_defaults(bool regression) {
  json j = {{"C", 1.0}, {"kernel", "rbf"}, {"gamma", 0.0}, {"tolerance", 1e-3}, {"max_passes", 100000}};
  if (regression) j["epsilon"] = 0.1;
  return j;
}

json cart_defaults() { return {{"max_depth", -1}, {"min_samples_leaf", 1}}; }

json forest_defaults(bool bootstrap) {
  return {{"n_trees", 100},
          {"max_depth", 6},
          {"min_samples_leaf", 1},
          {"feature_subset_size", 0},
          {"bootstrap", bootstrap}};
}

json boost_defaults() {
  return {{"n_stages", 100}, {"learning_rate", 0.1}, {"max_depth", 3}, {"min_samples_leaf", 1}};
}

std::string s(std::string_view v) { return std::string(v); }

}  // namespace

json default_config() {
  json second = boost_defaults();
  second["lambda_l2"] = 1.0;
  second["gamma"] = 0.0;
  json stochastic = boost_defaults();
  stochastic["subsample_fraction"] = 0.5;
  return {
      {"data", ""},
      {"suite", "all"},
      {"seed", 42},
      {"output_dir", "thermoforge_out"},
      {"split", {{"train_fraction", 0.8}}},
      {"regress",
       {{"data", ""},
        {"features", {s(data::kRotationalRate), s(data::kTravelSpeed), s(data::kFlowRate)}},
        {"models",
         {{"svr", svm_defaults(true)},
          {"decision_tree", cart_defaults()},
          {"random_forest", forest_defaults(true)},
          {"second_order_boosting", second},
          {"ordered_boosting", {{"n_stages", 100}, {"learning_rate", 0.1}, {"depth", 4}, {"n_permutations", 4}}},
          {"adaboost", {{"n_stages", 50}, {"base_depth", 0}}},
          {"extra_trees", forest_defaults(false)},
          {"gradient_boosting", boost_defaults()}}}}},
      {"pinn",
       {{"data", ""},
        {"inputs", {s(data::kRotationalRate), s(data::kTravelSpeed), s(data::kFlowRate)}},
        {"epochs", 2000},
        {"learning_rate", 1e-3},
        {"physics_weight", 1.0},
        {"hidden_layers", {32, 32}},
        {"surface_grid", 25},
        {"physics",
         {{"c", 1.0},
          {"k", 1.0},
          {"hbar", 1.0},
          {"mass", 1.0},
          {"t_feature", s(data::kTravelSpeed)},
          {"x_feature", s(data::kRotationalRate)},
          {"textbook_wave", false},
          {"collocation", "training_points"},
          {"grid_size", 10}}}}},
      {"classify",
       {{"data", ""},
        {"features",
         {s(data::kRotationalRate), s(data::kTravelSpeed), s(data::kToolGeometry), s(data::kFlowRate),
          s(data::kPowderSize)}},
        {"models",
         {{"logistic_regression", {{"learning_rate", 0.1}, {"n_epochs", 500}, {"l2", 0.0}, {"threshold", 0.5}}},
          {"knn", {{"k", 5}}},
          {"svc", svm_defaults(false)},
          {"sgd_classifier", {{"learning_rate", 0.1}, {"n_epochs", 500}}},
          {"decision_tree", cart_defaults()},
          {"random_forest", forest_defaults(true)},
          {"adaboost", {{"n_stages", 50}, {"base_depth", 0}}},
          {"gradient_boosting", boost_defaults()},
          {"stochastic_gradient_boosting", stochastic}}}}},
  };
}

namespace {

const char* type_label(const json& j) {
  if (j.is_object()) return "an object";
  if (j.is_array()) return "an array";
  if (j.is_boolean()) return "a boolean";
  if (j.is_string()) return "a string";
  if (j.is_number_integer()) return "an integer";
  if (j.is_number()) return "a number";
  return "null";
}

// Leaf compatibility: integers must stay integers, floats accept any number.
bool same_kind(const json& def, const json& user) {
  if (def.is_boolean()) return user.is_boolean();
  if (def.is_string()) return user.is_string();
  if (def.is_number_integer()) return user.is_number_integer();
  if (def.is_number()) return user.is_number();
  return false;
}

}  // namespace

json merge_strict(const json& defaults, const json& user, const std::string& path) {
  if (defaults.is_object()) {
    if (!user.is_object()) throw ConfigError(path, std::string("expected an object, got ") + type_label(user));
    json out = defaults;
    for (const auto& [key, value] : user.items()) {
      const std::string child = path + "/" + key;
      if (!defaults.contains(key)) throw ConfigError(child, "unknown key '" + key + "'");
      out[key] = merge_strict(defaults[key], value, child);
    }
    return out;
  }
  if (defaults.is_array()) {
    if (!user.is_array()) throw ConfigError(path, std::string("expected an array, got ") + type_label(user));
    const json& proto = defaults.front();
    for (std::size_t i = 0; i < user.size(); ++i) {
      if (!same_kind(proto, user[i])) {
        throw ConfigError(path + "/" + std::to_string(i),
                          std::string("expected ") + type_label(proto) + ", got " + type_label(user[i]));
      }
    }
    return user;
  }
  if (!same_kind(defaults, user)) {
    throw ConfigError(path, std::string("expected ") + type_label(defaults) + ", got " + type_label(user));
  }
  if (defaults.is_number_float()) return user.get<double>();
  return user;
}

std::string fingerprint_of(const json& effective) {
  json canon = effective;
  canon.erase("output_dir");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canon.dump())));
  return buf;
}

std::string RunConfig::fingerprint() const { return fingerprint_of(effective); }

namespace {

// Key of `obj` named as a whole word in `message`, or "".
std::string named_key(const json& obj, const std::string& message) {
  std::string best;
  for (const auto& [key, value] : obj.items()) {
    for (std::size_t at = message.find(key); at != std::string::npos; at = message.find(key, at + 1)) {
      const std::size_t end = at + key.size();
      const bool starts = at == 0 || message[at - 1] == ' ';
      const bool ends = end == message.size() || message[end] == ' ';
      if (starts && ends && key.size() > best.size()) best = key;
    }
  }
  return best;
}

// Runs `fn`, turning InvalidArgument into a ConfigError at the key of `obj`
// the message names, or at `path` itself.
template <class F>
void checked(const std::string& path, const json& obj, F&& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    const std::string key = named_key(obj, e.what());
    throw ConfigError(key.empty() ? path : path + "/" + key, e.what());
  }
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

SvmParams svm_from(const json& j, const std::string& path, bool regression) {
  SvmParams p;
  p.C = j["C"];
  if (regression) p.epsilon = j["epsilon"];
  const std::string kernel = j["kernel"];
  require(kernel == "rbf" || kernel == "linear", path + "/kernel", "kernel must be 'rbf' or 'linear'");
  p.kernel = kernel == "rbf" ? KernelType::kRbf : KernelType::kLinear;
  p.gamma = j["gamma"];
  p.tolerance = j["tolerance"];
  p.max_passes = j["max_passes"];
  checked(path, j, [&] { validate(p); });
  return p;
}

CartConfig cart_from(const json& j, const std::string& path) {
  CartConfig c{j["max_depth"], j["min_samples_leaf"]};
  require(c.min_samples_leaf >= 1, path + "/min_samples_leaf", "must be >= 1");
  return c;
}

ForestConfig forest_from(const json& j, const std::string& path, std::uint64_t seed) {
  ForestConfig f;
  f.n_trees = j["n_trees"];
  f.max_depth = j["max_depth"];
  f.min_samples_leaf = j["min_samples_leaf"];
  f.feature_subset_size = j["feature_subset_size"];
  f.bootstrap = j["bootstrap"];
  f.seed = seed;
  require(f.n_trees >= 1, path + "/n_trees", "must be >= 1");
  require(f.min_samples_leaf >= 1, path + "/min_samples_leaf", "must be >= 1");
  require(f.feature_subset_size >= 0, path + "/feature_subset_size", "must be >= 0");
  return f;
}

BoostConfig boost_from(const json& j, const std::string& path, std::uint64_t seed) {
  BoostConfig b;
  b.n_stages = j["n_stages"];
  b.learning_rate = j["learning_rate"];
  b.max_depth = j["max_depth"];
  b.min_samples_leaf = j["min_samples_leaf"];
  if (j.contains("lambda_l2")) b.lambda_l2 = j["lambda_l2"];
  if (j.contains("gamma")) b.gamma = j["gamma"];
  if (j.contains("subsample_fraction")) b.subsample_fraction = j["subsample_fraction"];
  b.seed = seed;
  checked(path, j, [&] { validate(b); });
  return b;
}

AdaBoostConfig ada_from(const json& j, const std::string& path) {
  AdaBoostConfig a{j["n_stages"], j["base_depth"]};
  require(a.n_stages >= 1, path + "/n_stages", "must be >= 1");
  require(a.base_depth >= 0, path + "/base_depth", "must be >= 0");
  return a;
}

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty()) return p;
  const std::filesystem::path fp(p);
  return (fp.is_absolute() ? fp : base / fp).lexically_normal().string();
}

void check_features(const json& list, const std::string& path) {
  require(!list.empty(), path, "feature list is empty");
  const auto schema = data::CsvSchema::afsd();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string name = list[i];
    bool known = false;
    for (const auto& f : schema.feature_columns) known = known || f == name;
    require(known, path + "/" + std::to_string(i), "unknown feature '" + name + "'");
    for (std::size_t k = 0; k < i; ++k) require(list[k] != list[i], path + "/" + std::to_string(i), "duplicate feature");
  }
}

}  // namespace

RunConfig parse_config(const json& user, const std::filesystem::path& base_dir,
                       std::optional<std::uint64_t> seed_override) {
  json u = user;
  if (seed_override && u.is_object()) u["seed"] = *seed_override;
  RunConfig cfg;
  cfg.effective = merge_strict(default_config(), u);
  const json& e = cfg.effective;
  require(e["seed"].is_number_unsigned() || e["seed"].get<std::int64_t>() >= 0, "/seed", "seed must be a non-negative integer");
  cfg.seed = e["seed"].get<std::uint64_t>();
  cfg.suite = parse_suite(e["suite"]);
  cfg.data = resolve(e["data"], base_dir);
  cfg.output_dir = e["output_dir"];
  cfg.split.train_fraction = e["split"]["train_fraction"];
  cfg.split.seed = cfg.seed;
  require(cfg.split.train_fraction > 0.0 && cfg.split.train_fraction < 1.0, "/split/train_fraction",
          "must lie in (0, 1)");
  const std::uint64_t seed = cfg.seed;

  const json& r = e["regress"];
  const json& rm = r["models"];
  auto& rc = cfg.regress;
  rc.data = resolve(r["data"], base_dir);
  check_features(r["features"], "/regress/features");
  rc.features = r["features"].get<std::vector<std::string>>();
  rc.svr = svm_from(rm["svr"], "/regress/models/svr", true);
  rc.decision_tree = cart_from(rm["decision_tree"], "/regress/models/decision_tree");
  rc.random_forest = forest_from(rm["random_forest"], "/regress/models/random_forest", seed);
  rc.second_order_boosting = boost_from(rm["second_order_boosting"], "/regress/models/second_order_boosting", seed);
  {
    const json& o = rm["ordered_boosting"];
    rc.ordered_boosting.n_stages = o["n_stages"];
    rc.ordered_boosting.learning_rate = o["learning_rate"];
    rc.ordered_boosting.depth = o["depth"];
    rc.ordered_boosting.n_permutations = o["n_permutations"];
    rc.ordered_boosting.seed = seed;
    require(rc.ordered_boosting.n_stages >= 1, "/regress/models/ordered_boosting/n_stages", "must be >= 1");
    require(rc.ordered_boosting.learning_rate > 0.0, "/regress/models/ordered_boosting/learning_rate", "must be > 0");
    require(rc.ordered_boosting.depth >= 1, "/regress/models/ordered_boosting/depth", "must be >= 1");
    require(rc.ordered_boosting.n_permutations >= 1, "/regress/models/ordered_boosting/n_permutations",
            "must be >= 1");
  }
  rc.adaboost = ada_from(rm["adaboost"], "/regress/models/adaboost");
  rc.extra_trees = forest_from(rm["extra_trees"], "/regress/models/extra_trees", seed);
  rc.gradient_boosting = boost_from(rm["gradient_boosting"], "/regress/models/gradient_boosting", seed);

  const json& p = e["pinn"];
  auto& pc = cfg.pinn;
  pc.data = resolve(p["data"], base_dir);
  check_features(p["inputs"], "/pinn/inputs");
  pc.train.inputs = p["inputs"].get<std::vector<std::string>>();
  pc.train.epochs = p["epochs"];
  pc.train.learning_rate = p["learning_rate"];
  pc.train.physics_weight = p["physics_weight"];
  pc.train.hidden_layers = p["hidden_layers"].get<std::vector<int>>();
  pc.train.seed = seed;
  checked("/pinn", p, [&] { pc.train.validate(); });
  pc.surface_grid = p["surface_grid"];
  require(pc.surface_grid >= 2, "/pinn/surface_grid", "must be >= 2");
  {
    const json& ph = p["physics"];
    auto& s = pc.physics;
    s.c = ph["c"];
    s.k = ph["k"];
    s.hbar = ph["hbar"];
    s.mass = ph["mass"];
    s.t_feature = ph["t_feature"];
    s.x_feature = ph["x_feature"];
    s.textbook_wave = ph["textbook_wave"];
    const std::string coll = ph["collocation"];
    require(coll == "training_points" || coll == "grid", "/pinn/physics/collocation",
            "must be 'training_points' or 'grid'");
    s.collocation = coll == "grid" ? Collocation::kGrid : Collocation::kTrainingPoints;
    s.grid_size = ph["grid_size"];
    for (Equation eq : {Equation::kTransport, Equation::kWave, Equation::kHeat, Equation::kSchrodinger}) {
      PhysicsSpec probe = s;
      probe.equation = eq;
      checked("/pinn/physics", ph, [&] { probe.validate(); });
    }
    for (const std::string* f : {&s.t_feature, &s.x_feature}) {
      bool found = false;
      for (const auto& in : pc.train.inputs) found = found || in == *f;
      require(found, "/pinn/physics", "coordinate feature '" + *f + "' is not among /pinn/inputs");
    }
  }

  const json& c = e["classify"];
  const json& cm = c["models"];
  auto& cc = cfg.classify;
  cc.data = resolve(c["data"], base_dir);
  check_features(c["features"], "/classify/features");
  cc.features = c["features"].get<std::vector<std::string>>();
  {
    const json& l = cm["logistic_regression"];
    cc.logistic_regression = {l["learning_rate"], l["n_epochs"], l["l2"], l["threshold"]};
    checked("/classify/models/logistic_regression", l, [&] { validate(cc.logistic_regression); });
  }
  cc.knn_k = cm["knn"]["k"];
  require(cc.knn_k >= 1, "/classify/models/knn/k", "must be >= 1");
  cc.svc = svm_from(cm["svc"], "/classify/models/svc", false);
  {
    const json& g = cm["sgd_classifier"];
    cc.sgd_classifier.learning_rate = g["learning_rate"];
    cc.sgd_classifier.n_epochs = g["n_epochs"];
    cc.sgd_classifier.seed = seed;
    require(cc.sgd_classifier.learning_rate > 0.0, "/classify/models/sgd_classifier/learning_rate", "must be > 0");
    require(cc.sgd_classifier.n_epochs >= 1, "/classify/models/sgd_classifier/n_epochs", "must be >= 1");
  }
  cc.decision_tree = cart_from(cm["decision_tree"], "/classify/models/decision_tree");
  cc.random_forest = forest_from(cm["random_forest"], "/classify/models/random_forest", seed);
  cc.adaboost = ada_from(cm["adaboost"], "/classify/models/adaboost");
  cc.gradient_boosting = boost_from(cm["gradient_boosting"], "/classify/models/gradient_boosting", seed);
  cc.stochastic_gradient_boosting =
      boost_from(cm["stochastic_gradient_boosting"], "/classify/models/stochastic_gradient_boosting", seed);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json user;
  try {
    user = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("", "malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(user, path.parent_path(), seed_override);
}

}  // namespace thermoforge::cli
