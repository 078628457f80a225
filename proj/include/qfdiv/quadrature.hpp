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

#ifndef QFDIV_QUADRATURE_HPP
#define QFDIV_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfdiv {

struct QuadOptions {
  double rel_tol = 1e-8;
  int max_panels = 10000;
};

struct QuadOutcome {
  double value = 0.0;
  double abs_error = 0.0;
  int panels = 0;
};

// Raised when the panel budget is exhausted; carries the best estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double best, double err)
      : std::runtime_error(msg), best_value(best), achieved_error(err) {}
  double best_value;
  double achieved_error;
};

// Adaptive bisection with an embedded Gauss(7)/Kronrod(15) pair per panel.
// `breakpoints` (sorted, >= 2 entries) seed the initial panel tree; panels
// are split worst-error-first and the final sums run in interval order so
// results do not depend on scheduling. Error estimates are the conservative
// |K15 - G7| per panel.
QuadOutcome integrate_adaptive(const std::function<double(double)>& g,
                               const std::vector<double>& breakpoints,
                               const QuadOptions& opt = {});

// Geometric subdivision {a, a*r, ..., b} used to seed wide integration
// ranges; always contains both endpoints. per_decade >= 1.
std::vector<double> log_breakpoints(double a, double b, int per_decade = 4);

}  // namespace qfdiv

#endif  // QFDIV_QUADRATURE_HPP
