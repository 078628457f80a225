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

// Seeded property batteries behind the `qfdiv verify` command. Violations
// are counted, never thrown: a battery always runs to completion.

#ifndef QFDIV_VERIFY_HPP
#define QFDIV_VERIFY_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qfdiv/bounds.hpp"

namespace qfdiv {

// One named property. Every check reduces to a headroom value: tolerance
// minus defect for equalities, slack plus tolerance for one-sided bounds.
// headroom >= 0 passes; NaN counts as a violation.
struct PropertyResult {
  std::string name;
  int checks = 0;
  int violations = 0;
  double worst_headroom = std::numeric_limits<double>::infinity();
};

struct VerifySummary {
  std::string suite;
  std::vector<PropertyResult> properties;
  // BoundReports produced along the way (bounds and dp suites); kept so the
  // CLI can emit the auditable lhs/rhs/digest rows.
  std::vector<BoundReport> reports;
  int total_checks = 0;
  int total_violations = 0;
  // Minimum headroom across all checks; +inf when nothing ran.
  double worst_headroom = std::numeric_limits<double>::infinity();
};

// Suites: hockey, fdiv, renyi, contraction, bounds, dp, all. seeds scales
// the number of sampled instances per property; dims selects state
// dimensions (contraction always works on qubit channels). Unknown suite
// names throw std::invalid_argument listing the valid ones.
VerifySummary run_verify(const std::string& suite, int seeds,
                         const std::vector<Eigen::Index>& dims,
                         std::uint64_t seed);

}  // namespace qfdiv

#endif  // QFDIV_VERIFY_HPP
