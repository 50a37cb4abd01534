// Copyright 2026 The qinvert Authors
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

#include "qinvert/json_io.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "qinvert/errors.hpp"

namespace qinvert {
namespace {

using nlohmann::json;

std::vector<Complex> read_entries(const json& data, std::size_t expected, const char* field) {
  if (!data.is_array()) {
    throw ParseError(std::string("'") + field + "' must be an array of [re, im] pairs");
  }
  if (data.size() != expected) {
    throw ParseError(std::string("'") + field + "' has " + std::to_string(data.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  std::vector<Complex> out;
  out.reserve(expected);
  for (const auto& entry : data) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      throw ParseError(std::string("'") + field + "' entries must be [re, im] number pairs");
    }
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw ParseError(std::string("'") + field + "' contains a non-finite value");
    }
    out.emplace_back(re, im);
  }
  return out;
}

json write_entries(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      data.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    }
  }
  return data;
}

int read_positive(const json& j, const char* field) {
  if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 4096) {
    throw ParseError(std::string("'") + field + "' must be a positive integer");
  }
  return j.get<int>();
}

const json& require_field(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw ParseError(std::string("missing field '") + field + "'");
  }
  return j.at(field);
}

ComplexMatrix square_from_entries(const std::vector<Complex>& entries, int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      m(i, k) = entries[static_cast<std::size_t>(i) * n + k];
    }
  }
  return m;
}

}  // namespace

nlohmann::json complex_matrix_to_json(const ComplexMatrix& m) {
  if (!is_square(m)) {
    throw DimensionError("complex_matrix_to_json: matrix must be square");
  }
  return json{{"dim", m.rows()}, {"data", write_entries(m)}};
}

ComplexMatrix complex_matrix_from_json(const nlohmann::json& j) {
  const int dim = read_positive(require_field(j, "dim"), "dim");
  const auto entries =
      read_entries(require_field(j, "data"), static_cast<std::size_t>(dim) * dim, "data");
  return square_from_entries(entries, dim);
}

nlohmann::json superop_to_json(const SuperOperator& s) {
  return json{{"dim", s.dim()}, {"lr_matrix", write_entries(s.lr_matrix())}};
}

SuperOperator superop_from_json(const nlohmann::json& j) {
  const int dim = read_positive(require_field(j, "dim"), "dim");
  const int n = dim * dim;
  const auto entries =
      read_entries(require_field(j, "lr_matrix"), static_cast<std::size_t>(n) * n, "lr_matrix");
  return SuperOperator(dim, square_from_entries(entries, n));
}

nlohmann::json state_to_json(const BipartiteState& s) {
  json out{{"dims", json::array({s.dims().first, s.dims().second})},
           {"kind", s.is_pure() ? "pure" : "density"}};
  if (s.is_pure()) {
    json data = json::array();
    for (Eigen::Index i = 0; i < s.vector().size(); ++i) {
      data.push_back(json::array({s.vector()(i).real(), s.vector()(i).imag()}));
    }
    out["data"] = std::move(data);
  } else {
    out["data"] = write_entries(s.density_matrix());
  }
  return out;
}

BipartiteState state_from_json(const nlohmann::json& j) {
  const json& dims_json = require_field(j, "dims");
  if (!dims_json.is_array() || dims_json.size() != 2) {
    throw ParseError("'dims' must be a two-element array");
  }
  const Dims dims{read_positive(dims_json[0], "dims[0]"), read_positive(dims_json[1], "dims[1]")};
  const json& kind_json = require_field(j, "kind");
  if (!kind_json.is_string()) {
    throw ParseError("'kind' must be \"pure\" or \"density\"");
  }
  const std::string kind = kind_json.get<std::string>();
  const int n = dims.total();
  if (kind == "pure") {
    const auto entries = read_entries(require_field(j, "data"), n, "data");
    ComplexVector psi(n);
    for (int i = 0; i < n; ++i) psi(i) = entries[i];
    return BipartiteState::pure(dims, std::move(psi));
  }
  if (kind == "density") {
    const auto entries =
        read_entries(require_field(j, "data"), static_cast<std::size_t>(n) * n, "data");
    return BipartiteState::density(dims, square_from_entries(entries, n));
  }
  throw ParseError("'kind' must be \"pure\" or \"density\", got \"" + kind + "\"");
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace qinvert
