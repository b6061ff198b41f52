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


#ifndef CKC_IO_HPP_
#define CKC_IO_HPP_

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ckc/gap_lab.hpp"
#include "ckc/instance.hpp"
#include "ckc/oracle.hpp"

namespace ckc {

// Malformed or inconsistent input files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"n", "metric": {"matrix": [["p/q", ...]]} | {"coords2d": [[x, y]]},
//  "colors", "k", "req"}. Matrix entries may also be JSON integers.
Instance instance_from_json(const nlohmann::json& doc);
// Names one triangle-inequality violation of a matrix instance; empty for a
// metric.
std::string triangle_warning(const Instance& inst);
nlohmann::json instance_to_json(const Instance& inst);
Instance load_instance(const std::string& path);

nlohmann::json radius_to_json(const Radius& radius);
// {"centers", "radius", "radius_squared", "covered", "feasible"}
nlohmann::json solution_to_json(const Solution& sol);
nlohmann::json oracle_to_json(const OracleResult& result);

// {"radius", "items": [point], "x": {"point": "p/q"}, "z": {...},
//  "flows": {"1": {"amount": "p/q", "taken": [item position]}, ...}}.
// Points missing from "x" or "z" are zero.
struct CertificateFile {
  Radius radius;
  std::vector<int> items;
  FlowCertificate certificate;
};
nlohmann::json certificate_to_json(const CertificateFile& file);
CertificateFile certificate_from_json(const nlohmann::json& doc, int num_points);

nlohmann::json read_json_file(const std::string& path);

}  // namespace ckc

#endif  // CKC_IO_HPP_
