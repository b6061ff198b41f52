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

#include "ckc/gap_lab.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ckc {

namespace {

constexpr int kRedClass = 0;
constexpr int kBlueClass = 1;

// Star-shaped clusters: inside a cluster the listed centers are at distance one
// from the members of their ball and every other pair is two apart; points of
// different clusters are `far` apart.
struct StarLayout {
  std::vector<int> cluster;                  // per point
  std::vector<std::vector<int>> ball_of;     // per center point, its members
  std::vector<int> colors;

  int add_point(int cluster_id, int color) {
    cluster.push_back(cluster_id);
    colors.push_back(color);
    ball_of.emplace_back();
    return static_cast<int>(cluster.size()) - 1;
  }

  Rational distance(int i, int j, const Rational& far) const {
    if (cluster[i] != cluster[j]) return far;
    const auto linked = [&](int c, int p) {
      return std::find(ball_of[c].begin(), ball_of[c].end(), p) != ball_of[c].end();
    };
    if (linked(i, j) || linked(j, i)) return Rational(1);
    return Rational(2);
  }

  Instance build(const Rational& far, int64_t k, std::vector<int64_t> req) const {
    const int n = static_cast<int>(cluster.size());
    return Instance::from_distance_fn(
        n, [&](int i, int j) { return distance(i, j, far); }, colors, k, std::move(req),
        MetricCheck::kTrusted);
  }
};

std::string node_suffix(int64_t w, int64_t x, int64_t y, int64_t z) {
  return "[" + std::to_string(w) + "," + std::to_string(x) + "," + std::to_string(y) + "," +
         std::to_string(z) + "]";
}

}  // namespace

Instance gen_subset_sum_instance(const std::vector<int64_t>& input, int64_t k) {
  if (input.empty()) throw std::invalid_argument("subset-sum: no values");
  if (k < 1 || k >= static_cast<int64_t>(input.size())) {
    throw std::invalid_argument("subset-sum: k must lie in [1, number of values)");
  }
  for (int64_t v : input) {
    if (v <= 0) throw std::invalid_argument("subset-sum: values must be positive");
  }
  std::vector<int64_t> values = input;
  int64_t total = std::accumulate(values.begin(), values.end(), int64_t{0});
  if (total % 2 != 0) {
    for (int64_t& v : values) v *= 2;
    total *= 2;
  }
  StarLayout layout;
  for (size_t g = 0; g < values.size(); ++g) {
    const int cluster_id = static_cast<int>(g);
    const int center = layout.add_point(cluster_id, kRedClass);
    for (int64_t i = 1; i < total + values[g]; ++i) {
      const int member = layout.add_point(cluster_id, kRedClass);
      layout.ball_of[center].push_back(member);
    }
    for (int64_t i = 0; i < total - values[g]; ++i) {
      const int member = layout.add_point(cluster_id, kBlueClass);
      layout.ball_of[center].push_back(member);
    }
  }
  const int64_t red = k * total + total / 2;
  const int64_t blue = k * total - total / 2;
  return layout.build(Rational(10 * (k + 1)), k, {red, blue});
}

Instance gen_sos_gap_instance(int64_t n, const Rational& far) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("sos-gap: n must be odd and positive");
  if (far <= 2) throw std::invalid_argument("sos-gap: separation must exceed 2");
  const int points = static_cast<int>(8 * n);
  std::vector<int> colors(points);
  for (int p = 0; p < points; ++p) {
    const int cluster_id = p / 4;
    const bool odd = cluster_id % 2 == 0;  // 1-based cluster numbers
    const bool lone = p % 4 == 3;
    colors[p] = (odd == !lone) ? kRedClass : kBlueClass;
  }
  return Instance::from_distance_fn(
      points, [&](int i, int j) { return i / 4 == j / 4 ? Rational(1) : far; }, colors, n,
      {2 * n, 2 * n}, MetricCheck::kTrusted);
}

FlowGapInstance gen_flow_gap_instance(const Rational& far) {
  if (far <= 2) throw std::invalid_argument("flow-gap: separation must exceed 2");
  StarLayout layout;
  std::vector<int> items;
  // Overlapping pair: a shared core of five points and one extra point per ball.
  const auto add_pair = [&](int cluster_id, int core_red, int extra_color) {
    std::vector<int> core;
    for (int i = 0; i < 5; ++i) {
      core.push_back(layout.add_point(cluster_id, i < core_red ? kRedClass : kBlueClass));
    }
    const int first = core[0];
    const int second = core[1];
    const int first_extra = layout.add_point(cluster_id, extra_color);
    const int second_extra = layout.add_point(cluster_id, extra_color);
    for (int p : core) {
      if (p != first) layout.ball_of[first].push_back(p);
      if (p != second) layout.ball_of[second].push_back(p);
    }
    layout.ball_of[first].push_back(first_extra);
    layout.ball_of[second].push_back(second_extra);
    items.push_back(first);
    items.push_back(second);
  };
  const auto add_single = [&](int cluster_id, int color) {
    const int center = layout.add_point(cluster_id, color);
    for (int i = 0; i < 3; ++i) {
      const int member = layout.add_point(cluster_id, color);
      layout.ball_of[center].push_back(member);
    }
    items.push_back(center);
  };
  add_pair(0, 2, kBlueClass);  // each ball: 2 red, 4 blue
  add_single(2, kRedClass);    // 4 red
  add_pair(1, 3, kRedClass);   // each ball: 4 red, 2 blue
  add_single(3, kBlueClass);   // 4 blue

  FlowGapInstance out{layout.build(far, 3, {8, 8}), items, {}};
  const int n = out.instance.size();
  const BallTable balls(out.instance, Radius::from_value(Rational(1)));
  out.certificate.x.assign(n, Rational(0));
  out.certificate.z.assign(n, Rational(0));
  for (int c : items) out.certificate.x[c] = Rational(1, 2);
  for (int j = 0; j < n; ++j) {
    Rational reach(0);
    const PointSet& near = balls.ball(j);
    for (size_t i = near.find_first(); i != PointSet::npos; i = near.find_next(i)) {
      reach += out.certificate.x[i];
    }
    out.certificate.z[j] = std::min(reach, Rational(1));
  }
  out.certificate.paths = {{Rational(1, 2), {0, 1, 2}}, {Rational(1, 2), {3, 4, 5}}};
  return out;
}

FlowNetworkLP build_flow_lp(const Instance& inst, const std::vector<int>& items,
                            const Radius& radius) {
  if (inst.num_classes() != 2) throw std::invalid_argument("flow LP needs two classes");
  const BallTable balls(inst, radius);
  Lp1Model lp1 = build_lp1(balls, full_lp1_spec(inst));
  FlowNetworkLP out;
  out.lp = std::move(lp1.lp);
  out.items = items;
  out.cap = inst.size();
  out.k = inst.k();
  out.red_req = inst.req(kRedClass);
  out.blue_req = inst.req(kBlueClass);
  for (int v = 0; v < out.lp.num_variables(); ++v) out.variables[out.lp.variable_name(v)] = v;
  for (int c : items) {
    if (c < 0 || c >= inst.size()) throw std::invalid_argument("flow LP: item out of range");
    const auto counts = class_counts(inst, balls.ball(c));
    out.item_blue.push_back(counts[kBlueClass]);
    out.item_red.push_back(counts[kRedClass]);
  }

  const int64_t layers = static_cast<int64_t>(items.size());
  const int64_t side = out.cap + 1;
  const int64_t depth = out.k + 1;
  const auto node = [&](int64_t w, int64_t x, int64_t y, int64_t z) {
    return ((w * side + x) * side + y) * depth + z;
  };
  std::vector<std::vector<Term>> balance(static_cast<size_t>((layers + 1) * side * side * depth));
  const auto add_edge = [&](const std::string& name, int64_t from, int64_t to) {
    const int var = out.lp.add_variable(name);
    out.variables[name] = var;
    balance[from].push_back({var, Rational(-1)});
    if (to >= 0) balance[to].push_back({var, Rational(1)});
    return var;
  };
  for (int64_t w = 0; w < layers; ++w) {
    std::vector<Term> take{{out.variables.at("x[" + std::to_string(items[w]) + "]"), Rational(1)}};
    std::vector<Term> skip{{out.variables.at("x[" + std::to_string(items[w]) + "]"), Rational(1)}};
    for (int64_t x = 0; x < side; ++x) {
      for (int64_t y = 0; y < side; ++y) {
        for (int64_t z = 0; z < depth; ++z) {
          const int64_t here = node(w, x, y, z);
          const int e = add_edge("e" + node_suffix(w, x, y, z), here, node(w + 1, x, y, z));
          skip.push_back({e, Rational(1)});
          if (z < out.k) {
            const int64_t nx = std::min(x + out.item_blue[w], out.cap);
            const int64_t ny = std::min(y + out.item_red[w], out.cap);
            const int f = add_edge("f" + node_suffix(w, x, y, z), here, node(w + 1, nx, ny, z + 1));
            take.push_back({f, Rational(-1)});
          }
        }
      }
    }
    out.lp.add_constraint(std::move(take), Sense::kEqual, Rational(0),
                          "take[" + std::to_string(w) + "]");
    out.lp.add_constraint(std::move(skip), Sense::kEqual, Rational(1),
                          "skip[" + std::to_string(w) + "]");
  }
  for (int64_t x = std::min(out.blue_req, side); x < side; ++x) {
    for (int64_t y = std::min(out.red_req, side); y < side; ++y) {
      add_edge("g[" + std::to_string(x) + "," + std::to_string(y) + "]",
               node(layers, x, y, out.k), -1);
    }
  }
  for (int64_t w = 0; w <= layers; ++w) {
    for (int64_t x = 0; x < side; ++x) {
      for (int64_t y = 0; y < side; ++y) {
        for (int64_t z = 0; z < depth; ++z) {
          auto& terms = balance[node(w, x, y, z)];
          if (terms.empty() || node(w, x, y, z) == 0) continue;
          out.lp.add_constraint(std::move(terms), Sense::kEqual, Rational(0),
                                "flow" + node_suffix(w, x, y, z));
        }
      }
    }
  }
  return out;
}

CertificateCheck check_certificate(const FlowNetworkLP& lp3,
                                   const std::map<std::string, Rational>& assignment) {
  std::vector<Rational> values(lp3.lp.num_variables());
  for (int v = 0; v < lp3.lp.num_variables(); ++v) {
    const auto it = assignment.find(lp3.lp.variable_name(v));
    if (it == assignment.end()) {
      throw std::invalid_argument("certificate is missing " + lp3.lp.variable_name(v));
    }
    values[v] = it->second;
  }
  for (const auto& [name, unused] : assignment) {
    if (!lp3.variables.count(name)) throw std::invalid_argument("unknown variable " + name);
  }
  CertificateCheck out;
  out.violated = violated_rows(lp3.lp, values);
  out.ok = out.violated.empty();
  return out;
}

std::map<std::string, Rational> certificate_assignment(const FlowNetworkLP& lp3,
                                                       const FlowCertificate& cert) {
  std::map<std::string, Rational> out;
  for (const auto& [name, unused] : lp3.variables) out[name] = Rational(0);
  const auto set_point = [&](const char* prefix, const std::vector<Rational>& values) {
    for (size_t i = 0; i < values.size(); ++i) {
      const std::string name = prefix + ("[" + std::to_string(i) + "]");
      if (!lp3.variables.count(name)) throw std::invalid_argument("unknown variable " + name);
      out[name] = values[i];
    }
  };
  set_point("x", cert.x);
  set_point("z", cert.z);
  const int64_t layers = static_cast<int64_t>(lp3.items.size());
  for (const FlowPath& path : cert.paths) {
    int64_t x = 0, y = 0, z = 0;
    for (int64_t w = 0; w < layers; ++w) {
      const bool take = std::find(path.taken.begin(), path.taken.end(), w) != path.taken.end();
      if (take && z == lp3.k) throw std::invalid_argument("path takes more than k items");
      if (take) {
        out.at("f" + node_suffix(w, x, y, z)) += path.amount;
        x = std::min(x + lp3.item_blue[w], lp3.cap);
        y = std::min(y + lp3.item_red[w], lp3.cap);
        ++z;
      } else {
        out.at("e" + node_suffix(w, x, y, z)) += path.amount;
      }
    }
    const std::string sink = "g[" + std::to_string(x) + "," + std::to_string(y) + "]";
    if (z == lp3.k && out.count(sink)) out.at(sink) += path.amount;
  }
  return out;
}

}  // namespace ckc
