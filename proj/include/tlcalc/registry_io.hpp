// Copyright 2026 The tlcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "tlcalc/registry.hpp"

namespace tlcalc {

// Matrix literal file format:
//   {"d": int,
//    "matrices": {label: [[[re,im], ...], ...]},   rows of [re,im] entries
//    "vectors":  {label: [[re,im], ...]}}

namespace io_detail {

inline Cplx entry_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorCode::syntax_error, "registry: complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace io_detail

inline Registry registry_from_json(const nlohmann::json& j) {
  if (!j.contains("d"))
    fail(ErrorCode::syntax_error, "registry: missing dimension field \"d\"");
  Registry reg(j.at("d").get<int>());
  const int d = reg.dimension();
  if (j.contains("matrices")) {
    for (const auto& [label, rows] : j.at("matrices").items()) {
      ComplexMatrix m(d, d);
      if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        fail(ErrorCode::dimension_mismatch,
             "registry: matrix '" + label + "' must have " + std::to_string(d) + " rows");
      for (int r = 0; r < d; ++r) {
        const auto& row = rows[r];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
          fail(ErrorCode::dimension_mismatch,
               "registry: matrix '" + label + "' row " + std::to_string(r) +
                   " must have " + std::to_string(d) + " entries");
        for (int c = 0; c < d; ++c) m(r, c) = io_detail::entry_from_json(row[c]);
      }
      reg.add_matrix(label, std::move(m));
    }
  }
  if (j.contains("vectors")) {
    for (const auto& [label, entries] : j.at("vectors").items()) {
      if (!entries.is_array() || static_cast<int>(entries.size()) != d)
        fail(ErrorCode::dimension_mismatch,
             "registry: vector '" + label + "' must have " + std::to_string(d) + " entries");
      CVec v(d);
      for (int i = 0; i < d; ++i) v[i] = io_detail::entry_from_json(entries[i]);
      reg.add_vector(label, std::move(v));
    }
  }
  return reg;
}

inline Registry load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::invalid_argument, "cannot open registry file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::syntax_error, "registry '" + path + "': " + e.what());
  }
  return registry_from_json(j);
}

inline nlohmann::json registry_to_json(const Registry& reg) {
  nlohmann::json j;
  j["d"] = reg.dimension();
  nlohmann::json mats = nlohmann::json::object();
  for (const auto& [label, m] : reg.matrices()) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < m.cols(); ++c)
        row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(std::move(row));
    }
    mats[label] = std::move(rows);
  }
  j["matrices"] = std::move(mats);
  nlohmann::json vecs = nlohmann::json::object();
  for (const auto& [label, v] : reg.vectors()) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : v) entries.push_back({e.real(), e.imag()});
    vecs[label] = std::move(entries);
  }
  j["vectors"] = std::move(vecs);
  return j;
}

}  // namespace tlcalc
