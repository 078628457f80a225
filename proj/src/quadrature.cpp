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

#include "qfdiv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace qfdiv {

namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-index nodes.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct Panel {
  double a, b;
  double value;
  double error;
  bool splittable;
};

Panel evaluate_panel(const std::function<double(double)>& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = g(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double f1 = g(c - h * kXgk[j]);
    const double f2 = g(c + h * kXgk[j]);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kron * h;
  p.error = std::abs(kron - gauss) * h;
  p.splittable = (b - a) > 64.0 * std::numeric_limits<double>::epsilon() *
                              std::max({std::abs(a), std::abs(b), 1.0});
  if (!std::isfinite(p.value)) {
    std::ostringstream os;
    os << "quadrature: non-finite integrand on [" << a << ", " << b << "]";
    throw QuadratureError(os.str(), p.value, std::numeric_limits<double>::infinity());
  }
  return p;
}

// Interval-ordered summation: independent of the refinement schedule.
QuadOutcome finalize(std::vector<Panel> all, int panels) {
  std::sort(all.begin(), all.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadOutcome out;
  for (const Panel& p : all) out.value += p.value;
  for (const Panel& p : all) out.abs_error += p.error;
  out.panels = panels;
  return out;
}

}  // namespace

std::vector<double> log_breakpoints(double a, double b, int per_decade) {
  std::vector<double> breaks{a};
  if (b > a && a > 0.0 && b / a > 10.0) {
    const double step = std::pow(10.0, 1.0 / std::max(1, per_decade));
    double x = a * step;
    while (x < b / step) {
      breaks.push_back(x);
      x *= step;
    }
  }
  breaks.push_back(b);
  return breaks;
}

QuadOutcome integrate_adaptive(const std::function<double(double)>& g,
                               const std::vector<double>& breakpoints,
                               const QuadOptions& opt) {
  if (breakpoints.size() < 2) {
    throw std::invalid_argument("integrate_adaptive: need >= 2 breakpoints");
  }
  // Max-heap on error; ties resolve on the interval start for determinism.
  auto cmp = [](const Panel& x, const Panel& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
  std::vector<Panel> frozen;  // panels at machine width, no longer split

  int panels = 0;
  double total_value = 0.0, total_error = 0.0;
  auto add = [&](Panel p) {
    total_value += p.value;
    total_error += p.error;
    heap.push(std::move(p));
  };

  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      throw std::invalid_argument("integrate_adaptive: breakpoints must increase");
    }
    add(evaluate_panel(g, breakpoints[i], breakpoints[i + 1]));
    ++panels;
  }

  auto collect = [&]() {
    std::vector<Panel> all = frozen;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    return finalize(std::move(all), panels);
  };

  while (true) {
    const double target = opt.rel_tol * std::max(std::abs(total_value), 1e-300);
    if (total_error <= target || heap.empty()) return collect();
    if (panels >= opt.max_panels) {
      const QuadOutcome best = collect();
      std::ostringstream os;
      os << "quadrature: panel budget " << opt.max_panels
         << " exhausted, error " << best.abs_error << " > target " << target;
      throw QuadratureError(os.str(), best.value, best.abs_error);
    }
    Panel worst = heap.top();
    heap.pop();
    if (!worst.splittable) {
      frozen.push_back(worst);
      continue;
    }
    total_value -= worst.value;
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    add(evaluate_panel(g, worst.a, mid));
    add(evaluate_panel(g, mid, worst.b));
    ++panels;
  }
}

}  // namespace qfdiv
