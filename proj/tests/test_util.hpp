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

// Helpers shared by the unit tests and the acceptance runner.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "thermoforge/random.hpp"

namespace tftest {

inline std::filesystem::path source_dir() { return THERMOFORGE_SOURCE_DIR; }
inline std::filesystem::path cli_path() { return THERMOFORGE_CLI; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("thermoforge_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Eigen::MatrixXd random_matrix(thermoforge::CounterRng& rng, Eigen::Index rows, Eigen::Index cols, double lo = -1,
                                     double hi = 1) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

inline Eigen::VectorXd random_vector(thermoforge::CounterRng& rng, Eigen::Index n, double lo = -1, double hi = 1) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform(lo, hi);
  return v;
}

/// |a - b| / max(|a|, |b|, floor).
inline double rel_err(double a, double b, double floor = 1e-3) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

/// Central first and second differences of f at x with step h.
inline double fd1(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}
inline double fd2(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

/// Validates `doc` against the subset of JSON Schema used by the shipped
/// schema. Returns the first violation, or an empty string.
class SchemaValidator {
 public:
  explicit SchemaValidator(nlohmann::json root) : root_(std::move(root)) {}

  std::string validate(const nlohmann::json& doc) const { return check(root_, doc, ""); }

 private:
  const nlohmann::json& resolve(const nlohmann::json& s) const {
    if (!s.contains("$ref")) return s;
    const std::string ref = s["$ref"];
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    return root_["definitions"].at(ref.substr(prefix.size()));
  }

  static bool has_type(const nlohmann::json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    throw std::runtime_error("unsupported type " + t);
  }

  std::string check(const nlohmann::json& schema_in, const nlohmann::json& v, const std::string& at) const {
    const nlohmann::json& s = resolve(schema_in);
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || has_type(v, t);
      } else {
        ok = has_type(v, s["type"]);
      }
      if (!ok) return at + ": expected type " + s["type"].dump();
    }
    if (s.contains("const") && v != s["const"]) return at + ": expected " + s["const"].dump();
    if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), v) == s["enum"].end()) {
      return at + ": " + v.dump() + " not in enum";
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>()) return at + ": below minimum";
      if (s.contains("maximum") && x > s["maximum"].get<double>()) return at + ": above maximum";
    }
    if (v.is_string() && s.contains("pattern") &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) {
      return at + ": pattern mismatch";
    }
    if (s.contains("anyOf")) {
      std::string last;
      for (const auto& alt : s["anyOf"]) {
        last = check(alt, v, at);
        if (last.empty()) break;
      }
      if (!last.empty()) return at + ": no anyOf alternative matched (" + last + ")";
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& k : s["required"]) {
          if (!v.contains(k.get<std::string>())) return at + ": missing " + k.get<std::string>();
        }
      }
      const nlohmann::json props = s.value("properties", nlohmann::json::object());
      for (const auto& [k, child] : v.items()) {
        if (props.contains(k)) {
          auto e = check(props[k], child, at + "/" + k);
          if (!e.empty()) return e;
        } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
          return at + ": unexpected key " + k;
        }
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) return at + ": too few items";
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          auto e = check(s["items"], v[i], at + "/" + std::to_string(i));
          if (!e.empty()) return e;
        }
      }
    }
    return {};
  }

  nlohmann::json root_;
};

inline SchemaValidator report_schema() {
  return SchemaValidator(nlohmann::json::parse(read_file(source_dir() / "schema" / "report.schema.json")));
}

/// Runs the CLI with `args`, optionally with extra environment assignments.
inline int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = (env.empty() ? "" : env + " ") + "\"" + cli_path().string() + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

/// Report text with the wall-clock fields removed.
inline std::string strip_timing(const std::filesystem::path& p) {
  const std::string text = read_file(p);
  if (p.extension() == ".json") {
    auto j = nlohmann::json::parse(text);
    if (j.contains("rows")) {
      for (auto& r : j["rows"]) r.erase("execution_seconds");
    }
    return j.dump();
  }
  if (p.extension() == ".csv" && text.substr(0, text.find('\n')).ends_with(",execution_seconds")) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
      const auto cut = line.rfind(',');
      out += (cut == std::string::npos ? line : line.substr(0, cut)) + "\n";
    }
    return out;
  }
  return text;
}

}  // namespace tftest
