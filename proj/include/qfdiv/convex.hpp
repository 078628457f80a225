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

#pragma once

#include <functional>
#include <map>
#include <string>

namespace qfdiv {

// A convex, twice-differentiable f:(0,inf)->R with f(1) = 0, bundled with the
// analytic data the integral engine consumes. All derivatives are hand-coded
// per member; a finite-difference check is part of the test suite, so a new
// member with a wrong fp/fpp fails loudly rather than silently biasing
// integrals. f_at_0 = lim_{x->0+} f(x) and fp_at_inf = lim_{x->inf} f'(x) may
// be +inf; neither can be -inf for a convex f with f(1) = 0.
struct ConvexFunction {
  std::string name;                      // base identifier, e.g. "hellinger"
  std::string spec;                      // canonical registry spelling
  std::map<std::string, double> params;  // e.g. {{"alpha", 0.5}}
  std::function<double(double)> f;
  std::function<double(double)> fp;
  std::function<double(double)> fpp;
  double f_at_0 = 0.0;
  double fp_at_inf = 0.0;
  bool operator_convex = false;
  double fpp_at_1 = 0.0;
};

ConvexFunction make_kl();
ConvexFunction make_chi2();
ConvexFunction make_js();

// (x^alpha - 1)/(alpha - 1); alpha > 0, alpha != 1. Operator convex for
// alpha in (0,1) u (1,2].
ConvexFunction make_hellinger(double alpha);

// lambda(1-lambda)(x-1)^2 / (lambda x + 1 - lambda); lambda in [0,1].
// Degenerates to the zero function at the endpoints.
ConvexFunction make_lecam(double lambda);

// (1-lambda+lambda x)[mu f(1/m) + (1-mu) f(x/m)] with m = 1-lambda+lambda x.
ConvexFunction make_skew(const ConvexFunction& base, double lambda, double mu);

// f((1-p)x + p): the pullback of f through a depolarizing-type mixing.
ConvexFunction make_depol_pullback(const ConvexFunction& base, double p);

// slope*(x-1): in the trivial kernel of every integral f-divergence.
ConvexFunction make_linear(double slope);

// g(t) = t f(1/t). Swapping arguments of D_f is the same as switching to g.
ConvexFunction star_conjugate(const ConvexFunction& base);

// xi(f) = f'(inf) + f(0+), the universal weight appearing in amortization
// and upper bounds; +inf when either limit diverges.
double xi(const ConvexFunction& f);

// Parses registry spec strings: "kl", "chi2", "js", "hellinger:alpha=0.5",
// "lecam:lambda=0.3", "skew:base=kl,lambda=0.5,mu=0.5",
// "depol_pullback:base=kl,p=0.25", "star:base=kl". One level of composition
// reads left to right: the outer member consumes the first occurrence of each
// key it owns and forwards the rest to the base factory. Unknown names or
// malformed parameters throw std::invalid_argument listing the valid names.
ConvexFunction parse_convex_function(const std::string& spec);

}  // namespace qfdiv
