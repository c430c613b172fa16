// Copyright 2026 The Authors.
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

#ifndef ROBUST_SELECT_JSON_IO_HPP_
#define ROBUST_SELECT_JSON_IO_HPP_

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include "robust_select/bench.hpp"
#include "robust_select/errors.hpp"
#include "robust_select/matroid.hpp"
#include "robust_select/scenario.hpp"
#include "robust_select/solvers.hpp"

namespace robust_select {

using Json = nlohmann::json;

namespace detail {

inline const Json& require(const Json& obj, const std::string& key,
                           const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError("missing field '" + where + key + "'");
  }
  return obj.at(key);
}

inline double number_at(const Json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError("field '" + field + "' must be a number");
  return v.get<double>();
}

inline std::size_t count_at(const Json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("field '" + field + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

inline std::vector<Point2> points_at(const Json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError("field '" + field + "' must be an array");
  std::vector<Point2> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string name = field + "[" + std::to_string(i) + "]";
    const Json& p = v[i];
    if (!p.is_array() || p.size() != 2) {
      throw ConfigError("field '" + name + "' must be an [x, y] pair");
    }
    out.push_back({number_at(p[0], name + "[0]"), number_at(p[1], name + "[1]")});
  }
  return out;
}

}  // namespace detail

inline MatroidSpec matroid_from_json(const Json& j, std::size_t ground_size) {
  const std::string type = [&] {
    const Json& t = detail::require(j, "type", "matroid.");
    if (!t.is_string()) throw ConfigError("field 'matroid.type' must be a string");
    return t.get<std::string>();
  }();
  if (type == "uniform") {
    const std::size_t rank =
        detail::count_at(detail::require(j, "rank", "matroid."), "matroid.rank");
    try {
      return MatroidSpec::uniform(ground_size, rank);
    } catch (const SpecError& e) {
      throw ConfigError(std::string("field 'matroid.rank': ") + e.what());
    }
  }
  if (type != "partition") {
    throw ConfigError("field 'matroid.type' must be 'uniform' or 'partition'");
  }
  const Json& jb = detail::require(j, "blocks", "matroid.");
  if (!jb.is_array()) throw ConfigError("field 'matroid.blocks' must be an array");
  std::vector<std::vector<ActionId>> blocks;
  for (std::size_t b = 0; b < jb.size(); ++b) {
    const std::string name = "matroid.blocks[" + std::to_string(b) + "]";
    if (!jb[b].is_array()) throw ConfigError("field '" + name + "' must be an array");
    std::vector<ActionId> ids;
    for (std::size_t k = 0; k < jb[b].size(); ++k) {
      ids.push_back(static_cast<ActionId>(
          detail::count_at(jb[b][k], name + "[" + std::to_string(k) + "]")));
    }
    blocks.push_back(std::move(ids));
  }
  const Json& jc = detail::require(j, "capacity", "matroid.");
  std::vector<std::size_t> caps;
  if (jc.is_array()) {
    for (std::size_t b = 0; b < jc.size(); ++b) {
      caps.push_back(detail::count_at(
          jc[b], "matroid.capacity[" + std::to_string(b) + "]"));
    }
    if (caps.size() != blocks.size()) {
      throw ConfigError("field 'matroid.capacity' needs one entry per block");
    }
  } else {
    caps.assign(blocks.size(), detail::count_at(jc, "matroid.capacity"));
  }
  try {
    return MatroidSpec::partition(ground_size, std::move(blocks), std::move(caps));
  } catch (const SpecError& e) {
    throw ConfigError(std::string("field 'matroid.blocks': ") + e.what());
  }
}

inline Json matroid_to_json(const MatroidSpec& m) {
  if (m.kind() == MatroidKind::kUniform) {
    return {{"type", "uniform"}, {"rank", m.rank()}};
  }
  Json blocks = Json::array();
  for (const auto& b : m.blocks()) blocks.push_back(b);
  const auto& caps = m.capacities();
  const bool shared =
      !caps.empty() && std::all_of(caps.begin(), caps.end(),
                                   [&](std::size_t c) { return c == caps[0]; });
  Json capacity = shared ? Json(caps[0]) : Json(caps);
  if (caps.empty()) capacity = 0;
  return {{"type", "partition"}, {"blocks", blocks}, {"capacity", capacity}};
}

inline Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  auto agents = detail::points_at(detail::require(j, "agents", ""), "agents");
  auto actions = detail::points_at(detail::require(j, "actions", ""), "actions");
  if (agents.empty()) throw ConfigError("field 'agents' must not be empty");
  MatroidSpec m = matroid_from_json(detail::require(j, "matroid", ""), actions.size());
  try {
    return Scenario(std::move(agents), std::move(actions), std::move(m));
  } catch (const InstanceError& e) {
    throw ConfigError(e.what());
  }
}

inline Json scenario_to_json(const Scenario& s) {
  auto points = [](const std::vector<Point2>& ps) {
    Json arr = Json::array();
    for (const auto& p : ps) arr.push_back({p.x, p.y});
    return arr;
  };
  return {{"agents", points(s.agents())},
          {"actions", points(s.actions())},
          {"matroid", matroid_to_json(s.constraint())}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline Scenario load_scenario(const std::string& path) {
  return scenario_from_json(read_json_file(path));
}

inline Json solution_to_json(const Solution& sol) {
  Json params = Json::object();
  for (const auto& [key, value] : sol.params) params[key] = value;
  return {{"algorithm", sol.algorithm},
          {"selected", sol.selected.ids()},
          {"min_value", sol.min_value},
          {"evaluations", sol.f_evaluations()},
          {"wall_time_ms", sol.wall_time_ms},
          {"params", params}};
}

// Every field is optional; absent fields keep their defaults.
inline BenchConfig bench_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("bench config must be a JSON object");
  BenchConfig c;
  auto count = [&](const char* key, std::size_t& dst) {
    if (j.contains(key)) dst = detail::count_at(j.at(key), key);
  };
  auto number = [&](const char* key, double& dst) {
    if (j.contains(key)) dst = detail::number_at(j.at(key), key);
  };
  count("n_agents", c.n_agents);
  count("n_actions", c.n_actions);
  count("z_min", c.z_min);
  count("z_max", c.z_max);
  count("trials", c.trials);
  count("threads", c.threads);
  number("region", c.region);
  number("delta", c.delta);
  number("epsilon", c.relative_epsilon);
  number("curvature_input", c.curvature);
  if (j.contains("base_seed")) {
    if (!j.at("base_seed").is_number_integer()) {
      throw ConfigError("field 'base_seed' must be an integer");
    }
    c.base_seed = j.at("base_seed").get<std::uint64_t>();
  }
  if (j.contains("record_wall_time")) {
    if (!j.at("record_wall_time").is_boolean()) {
      throw ConfigError("field 'record_wall_time' must be a boolean");
    }
    c.record_wall_time = j.at("record_wall_time").get<bool>();
  }
  c.validate();
  return c;
}

}  // namespace robust_select

#endif  // ROBUST_SELECT_JSON_IO_HPP_
