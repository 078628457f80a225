// Copyright 2026 The qfdiv authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfdiv/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qfdiv {
namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

// Entries are [re, im] arrays. Strict finiteness on both read and write
// keeps NaN/inf out of files entirely; "inf" is a rendering concern of the
// CSV layer, never of stored operators.
Matrix entries_to_matrix(const json& doc, Eigen::Index rows,
                         Eigen::Index cols, const char* what) {
  if (!doc.is_array() || static_cast<Eigen::Index>(doc.size()) != rows) {
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument(std::string(what) + ": row " +
                                  std::to_string(i) + " must have " +
                                  std::to_string(cols) + " entries");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_array() || cell.size() != 2 ||
          !cell[0].is_number() || !cell[1].is_number()) {
        throw std::invalid_argument(std::string(what) +
                                    ": entries must be [re, im] numbers");
      }
      const double re = cell[0].get<double>();
      const double im = cell[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw std::invalid_argument(std::string(what) +
                                    ": non-finite entry at (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      }
      m(i, j) = std::complex<double>(re, im);
    }
  }
  return m;
}

json matrix_to_entries(const Matrix& m, const char* what) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const std::complex<double> z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument(std::string(what) +
                                    ": refusing to serialize non-finite "
                                    "entry at (" +
                                    std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
      }
      row.push_back(json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::Index read_dim(const json& doc, const char* key, const char* what) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw std::invalid_argument(std::string(what) + ": missing integer \"" +
                                key + "\"");
  }
  const auto dim = doc[key].get<Eigen::Index>();
  if (dim < 1 || dim > kDimGuard) {
    throw std::invalid_argument(std::string(what) + ": \"" + key +
                                "\" out of range");
  }
  return dim;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text << '\n')) {
    throw std::runtime_error("cannot write " + path);
  }
}

Matrix matrix_from_doc(const json& doc, const char* what) {
  if (!doc.is_object()) {
    throw std::invalid_argument(std::string(what) +
                                ": expected a JSON object");
  }
  const Eigen::Index dim = read_dim(doc, "dim", what);
  if (!doc.contains("entries")) {
    throw std::invalid_argument(std::string(what) + ": missing \"entries\"");
  }
  return entries_to_matrix(doc["entries"], dim, dim, what);
}

DensityMatrix density_from_doc(const json& doc, const char* what) {
  return validate_density(HermitianOperator(matrix_from_doc(doc, what)));
}

}  // namespace

Matrix parse_matrix(const std::string& json_text) {
  return matrix_from_doc(parse_document(json_text), "matrix");
}

std::string serialize_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix: only square matrices are stored");
  }
  json doc;
  doc["dim"] = m.rows();
  doc["entries"] = matrix_to_entries(m, "matrix");
  return doc.dump(2);
}

Matrix load_matrix(const std::string& path) {
  return parse_matrix(slurp(path));
}

void save_matrix(const std::string& path, const Matrix& m) {
  spill(path, serialize_matrix(m));
}

QuantumChannel parse_channel(const std::string& json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object()) {
    throw std::invalid_argument("channel: expected a JSON object");
  }
  const Eigen::Index din = read_dim(doc, "dim_in", "channel");
  const Eigen::Index dout = read_dim(doc, "dim_out", "channel");
  if (!doc.contains("kraus") || !doc["kraus"].is_array() ||
      doc["kraus"].empty()) {
    throw std::invalid_argument("channel: missing non-empty \"kraus\"");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(doc["kraus"].size());
  for (const json& op : doc["kraus"]) {
    kraus.push_back(entries_to_matrix(op, dout, din, "channel kraus"));
  }
  return QuantumChannel(std::move(kraus));
}

std::string serialize_channel(const QuantumChannel& ch) {
  json doc;
  doc["dim_in"] = ch.dim_in();
  doc["dim_out"] = ch.dim_out();
  json ops = json::array();
  for (const Matrix& k : ch.kraus()) {
    ops.push_back(matrix_to_entries(k, "channel kraus"));
  }
  doc["kraus"] = std::move(ops);
  return doc.dump(2);
}

QuantumChannel load_channel(const std::string& path) {
  return parse_channel(slurp(path));
}

void save_channel(const std::string& path, const QuantumChannel& ch) {
  spill(path, serialize_channel(ch));
}

std::vector<std::pair<DensityMatrix, DensityMatrix>> parse_neighbors(
    const std::string& json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array()) {
    throw std::invalid_argument("neighbors: expected {\"pairs\": [...]}");
  }
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
  pairs.reserve(doc["pairs"].size());
  for (const json& entry : doc["pairs"]) {
    if (!entry.is_object() || !entry.contains("rho") ||
        !entry.contains("sigma")) {
      throw std::invalid_argument(
          "neighbors: each pair needs \"rho\" and \"sigma\"");
    }
    pairs.emplace_back(density_from_doc(entry["rho"], "neighbors rho"),
                       density_from_doc(entry["sigma"], "neighbors sigma"));
  }
  return pairs;
}

std::vector<std::pair<DensityMatrix, DensityMatrix>> load_neighbors(
    const std::string& path) {
  return parse_neighbors(slurp(path));
}

}  // namespace qfdiv
