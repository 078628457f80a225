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

// JSON serialization of matrices, channels, and neighbor lists. Entries are
// [re, im] pairs of finite doubles; serialization round-trips bit-exactly.

#ifndef QFDIV_IO_HPP
#define QFDIV_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// Matrix document {"dim": n, "entries": [[[re, im], ...], ...]}, row-major.
// Parsing validates the shape and finiteness and throws
// std::invalid_argument on any defect, including non-JSON input.
Matrix parse_matrix(const std::string& json_text);
std::string serialize_matrix(const Matrix& m);
Matrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Matrix& m);

// Channel document {"dim_in": n, "dim_out": m, "kraus": [entries, ...]}.
// Kraus completeness is enforced by the QuantumChannel constructor.
QuantumChannel parse_channel(const std::string& json_text);
std::string serialize_channel(const QuantumChannel& ch);
QuantumChannel load_channel(const std::string& path);
void save_channel(const std::string& path, const QuantumChannel& ch);

// Neighbor document {"pairs": [{"rho": matrix-doc, "sigma": matrix-doc},
// ...]}. Each side must parse into a valid density matrix; the symmetric
// closure is NOT applied here, callers decide.
std::vector<std::pair<DensityMatrix, DensityMatrix>> parse_neighbors(
    const std::string& json_text);
std::vector<std::pair<DensityMatrix, DensityMatrix>> load_neighbors(
    const std::string& path);

}  // namespace qfdiv

#endif  // QFDIV_IO_HPP
