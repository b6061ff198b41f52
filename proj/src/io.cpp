// Copyright 2026 The ckc Authors
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

#include "ckc/io.hpp"

#include <fstream>

namespace ckc {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw ParseError(std::string("missing field \"") + name + "\"");
  }
  return doc.at(name);
}

int64_t as_int(const json& value, const char* what) {
  if (!value.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return value.get<int64_t>();
}

Rational as_rational(const json& value, const char* what) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (!value.is_string()) throw ParseError(std::string(what) + " must be a \"p/q\" string");
  try {
    return parse_rational(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::vector<int64_t> int_list(const json& value, const char* what) {
  if (!value.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<int64_t> out;
  for (const json& item : value) out.push_back(as_int(item, what));
  return out;
}

}  // namespace

Instance instance_from_json(const json& doc) {
  const int64_t n = as_int(field(doc, "n"), "n");
  if (n < 0) throw ParseError("n must be nonnegative");
  const std::vector<int64_t> raw_colors = int_list(field(doc, "colors"), "colors");
  if (static_cast<int64_t>(raw_colors.size()) != n) throw ParseError("colors must have n entries");
  const std::vector<int> colors(raw_colors.begin(), raw_colors.end());
  const int64_t k = as_int(field(doc, "k"), "k");
  std::vector<int64_t> req = int_list(field(doc, "req"), "req");
  const json& metric = field(doc, "metric");
  try {
    if (metric.contains("coords2d")) {
      const json& rows = metric.at("coords2d");
      if (!rows.is_array() || static_cast<int64_t>(rows.size()) != n) {
        throw ParseError("coords2d must have n rows");
      }
      Instance::Coords coords;
      for (const json& row : rows) {
        if (!row.is_array() || row.size() != 2) throw ParseError("coords2d rows must be [x, y]");
        coords.push_back({as_int(row[0], "coordinate"), as_int(row[1], "coordinate")});
      }
      return Instance::from_coords(coords, colors, k, std::move(req));
    }
    if (metric.contains("matrix")) {
      const json& rows = metric.at("matrix");
      if (!rows.is_array() || static_cast<int64_t>(rows.size()) != n) {
        throw ParseError("matrix must have n rows");
      }
      std::vector<std::vector<Rational>> dist;
      for (const json& row : rows) {
        if (!row.is_array() || static_cast<int64_t>(row.size()) != n) {
          throw ParseError("matrix rows must have n entries");
        }
        std::vector<Rational> values;
        for (const json& entry : row) values.push_back(as_rational(entry, "distance"));
        dist.push_back(std::move(values));
      }
      Instance inst = Instance::from_matrix(dist, colors, k, std::move(req));
      return inst;
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  throw ParseError("metric must hold \"matrix\" or \"coords2d\"");
}

std::string triangle_warning(const Instance& inst) {
  const auto& bad = inst.triangle_violation();
  if (!bad) return {};
  const auto d = [&](int a, int b) {
    return "d(" + std::to_string(a) + "," + std::to_string(b) + ")";
  };
  return "not a metric: " + d(bad->i, bad->j) + " > " + d(bad->i, bad->via) + " + " +
         d(bad->via, bad->j);
}

json instance_to_json(const Instance& inst) {
  json doc;
  doc["n"] = inst.size();
  if (inst.coords()) {
    json rows = json::array();
    for (const auto& p : *inst.coords()) rows.push_back({p[0], p[1]});
    doc["metric"] = {{"coords2d", rows}};
  } else {
    json rows = json::array();
    for (int i = 0; i < inst.size(); ++i) {
      json row = json::array();
      for (int j = 0; j < inst.size(); ++j) {
        const auto value = inst.distance(i, j).exact_value();
        if (!value) throw std::logic_error("matrix distance without a rational value");
        row.push_back(format_rational(*value));
      }
      rows.push_back(std::move(row));
    }
    doc["metric"] = {{"matrix", rows}};
  }
  doc["colors"] = inst.colors();
  doc["k"] = inst.k();
  doc["req"] = inst.requirements();
  return doc;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

json radius_to_json(const Radius& radius) { return radius.to_string(); }

json solution_to_json(const Solution& sol) {
  return {{"centers", sol.centers},
          {"radius", radius_to_json(sol.radius)},
          {"radius_squared", format_rational(sol.radius.squared())},
          {"covered", sol.covered},
          {"feasible", sol.feasible}};
}

json oracle_to_json(const OracleResult& result) {
  return {{"centers", result.centers},
          {"radius", radius_to_json(result.radius)},
          {"radius_squared", format_rational(result.radius.squared())},
          {"sets_examined", result.sets_examined}};
}

json certificate_to_json(const CertificateFile& file) {
  json doc;
  doc["radius"] = radius_to_json(file.radius);
  doc["items"] = file.items;
  json x = json::object(), z = json::object();
  for (size_t i = 0; i < file.certificate.x.size(); ++i) {
    if (file.certificate.x[i] != 0) x[std::to_string(i)] = format_rational(file.certificate.x[i]);
  }
  for (size_t i = 0; i < file.certificate.z.size(); ++i) {
    if (file.certificate.z[i] != 0) z[std::to_string(i)] = format_rational(file.certificate.z[i]);
  }
  doc["x"] = std::move(x);
  doc["z"] = std::move(z);
  json flows = json::object();
  for (size_t p = 0; p < file.certificate.paths.size(); ++p) {
    flows[std::to_string(p + 1)] = {{"amount", format_rational(file.certificate.paths[p].amount)},
                                    {"taken", file.certificate.paths[p].taken}};
  }
  doc["flows"] = std::move(flows);
  return doc;
}

CertificateFile certificate_from_json(const json& doc, int num_points) {
  CertificateFile out;
  try {
    out.radius = Radius::parse(field(doc, "radius").get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("radius: ") + e.what());
  }
  for (int64_t item : int_list(field(doc, "items"), "items")) {
    if (item < 0 || item >= num_points) throw ParseError("item out of range");
    out.items.push_back(static_cast<int>(item));
  }
  const auto read_points = [&](const char* name, std::vector<Rational>& values) {
    values.assign(num_points, Rational(0));
    const json& map = field(doc, name);
    if (!map.is_object()) throw ParseError(std::string(name) + " must be an object");
    for (const auto& [key, value] : map.items()) {
      size_t used = 0;
      int point = -1;
      try {
        point = std::stoi(key, &used);
      } catch (const std::exception&) {
      }
      if (used != key.size() || point < 0 || point >= num_points) {
        throw ParseError(std::string(name) + ": bad point \"" + key + "\"");
      }
      values[point] = as_rational(value, name);
    }
  };
  read_points("x", out.certificate.x);
  read_points("z", out.certificate.z);
  const json& flows = field(doc, "flows");
  if (!flows.is_object()) throw ParseError("flows must be an object");
  for (const auto& [key, value] : flows.items()) {
    FlowPath path;
    path.amount = as_rational(field(value, "amount"), "amount");
    for (int64_t t : int_list(field(value, "taken"), "taken")) {
      if (t < 0 || t >= static_cast<int64_t>(out.items.size())) {
        throw ParseError("taken position out of range");
      }
      path.taken.push_back(static_cast<int>(t));
    }
    out.certificate.paths.push_back(std::move(path));
  }
  return out;
}

}  // namespace ckc
