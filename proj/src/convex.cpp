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

#include "qfdiv/convex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qfdiv/format.hpp"

namespace qfdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// mu * v with the convention that a zero coefficient kills an infinite limit
// (the term is absent, not an indeterminate product).
double scaled_limit(double mu, double v) { return mu == 0.0 ? 0.0 : mu * v; }

void check_unit_interval(const char* what, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " +
                                fmt_double(v));
  }
}

}  // namespace

ConvexFunction make_kl() {
  ConvexFunction c;
  c.name = "kl";
  c.spec = "kl";
  c.f = [](double x) { return x * std::log(x); };
  c.fp = [](double x) { return std::log(x) + 1.0; };
  c.fpp = [](double x) { return 1.0 / x; };
  c.f_at_0 = 0.0;
  c.fp_at_inf = kInf;
  c.operator_convex = true;
  c.fpp_at_1 = 1.0;
  return c;
}

ConvexFunction make_chi2() {
  ConvexFunction c;
  c.name = "chi2";
  c.spec = "chi2";
  c.f = [](double x) { return x * x - 1.0; };
  c.fp = [](double x) { return 2.0 * x; };
  c.fpp = [](double) { return 2.0; };
  c.f_at_0 = -1.0;
  c.fp_at_inf = kInf;
  c.operator_convex = true;
  c.fpp_at_1 = 2.0;
  return c;
}

ConvexFunction make_js() {
  ConvexFunction c;
  c.name = "js";
  c.spec = "js";
  const double ln2 = std::log(2.0);
  c.f = [](double x) {
    return 0.5 * (1.0 + x) * std::log(2.0 / (1.0 + x)) + 0.5 * x * std::log(x);
  };
  c.fp = [](double x) { return 0.5 * std::log(2.0 * x / (1.0 + x)); };
  c.fpp = [](double x) { return 0.5 / (x * (1.0 + x)); };
  c.f_at_0 = 0.5 * ln2;
  c.fp_at_inf = 0.5 * ln2;
  c.operator_convex = true;
  c.fpp_at_1 = 0.25;
  return c;
}

ConvexFunction make_hellinger(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw std::invalid_argument("hellinger alpha must be positive and != 1, got " +
                                fmt_double(alpha));
  }
  ConvexFunction c;
  c.name = "hellinger";
  c.spec = "hellinger:alpha=" + fmt_double(alpha);
  c.params["alpha"] = alpha;
  const double a = alpha;
  c.f = [a](double x) { return (std::pow(x, a) - 1.0) / (a - 1.0); };
  c.fp = [a](double x) { return a * std::pow(x, a - 1.0) / (a - 1.0); };
  c.fpp = [a](double x) { return a * std::pow(x, a - 2.0); };
  c.f_at_0 = 1.0 / (1.0 - a);
  c.fp_at_inf = a < 1.0 ? 0.0 : kInf;
  c.operator_convex = a <= 2.0;
  c.fpp_at_1 = a;
  return c;
}

ConvexFunction make_lecam(double lambda) {
  check_unit_interval("lecam lambda", lambda);
  ConvexFunction c;
  c.name = "lecam";
  c.spec = "lecam:lambda=" + fmt_double(lambda);
  c.params["lambda"] = lambda;
  const double l = lambda;
  const double w = l * (1.0 - l);
  c.f = [l, w](double x) {
    const double m = l * x + 1.0 - l;
    return w * (x - 1.0) * (x - 1.0) / m;
  };
  c.fp = [l, w](double x) {
    const double m = l * x + 1.0 - l;
    return w * (x - 1.0) * (l * (x - 1.0) + 2.0) / (m * m);
  };
  c.fpp = [l, w](double x) {
    const double m = l * x + 1.0 - l;
    return 2.0 * w / (m * m * m);
  };
  c.f_at_0 = l < 1.0 ? l : 0.0;
  c.fp_at_inf = l > 0.0 ? 1.0 - l : 0.0;
  c.operator_convex = true;
  c.fpp_at_1 = 2.0 * w;
  return c;
}

ConvexFunction make_skew(const ConvexFunction& base, double lambda, double mu) {
  check_unit_interval("skew lambda", lambda);
  check_unit_interval("skew mu", mu);
  ConvexFunction c;
  c.name = "skew";
  // Outer keys come first so a re-parse consumes them before the base's own.
  std::string base_tail;
  if (auto pos = base.spec.find(':'); pos != std::string::npos) {
    base_tail = "," + base.spec.substr(pos + 1);
  }
  c.spec = "skew:base=" + base.name + ",lambda=" + fmt_double(lambda) +
           ",mu=" + fmt_double(mu) + base_tail;
  c.params = base.params;
  c.params["lambda"] = lambda;
  c.params["mu"] = mu;
  const double l = lambda, m0 = mu;
  const ConvexFunction b = base;
  c.f = [l, m0, b](double x) {
    const double m = 1.0 - l + l * x;
    return m * (m0 * b.f(1.0 / m) + (1.0 - m0) * b.f(x / m));
  };
  c.fp = [l, m0, b](double x) {
    const double m = 1.0 - l + l * x;
    return m0 * l * (b.f(1.0 / m) - b.fp(1.0 / m) / m) +
           (1.0 - m0) * (l * b.f(x / m) + (1.0 - l) * b.fp(x / m) / m);
  };
  c.fpp = [l, m0, b](double x) {
    const double m = 1.0 - l + l * x;
    return (m0 * l * l * b.fpp(1.0 / m) +
            (1.0 - m0) * (1.0 - l) * (1.0 - l) * b.fpp(x / m)) /
           (m * m * m);
  };
  if (l < 1.0) {
    c.f_at_0 = (1.0 - l) * (scaled_limit(m0, b.f(1.0 / (1.0 - l))) +
                            scaled_limit(1.0 - m0, b.f_at_0));
  } else {
    c.f_at_0 = scaled_limit(m0, b.fp_at_inf);
  }
  if (l > 0.0) {
    c.fp_at_inf =
        l * (scaled_limit(m0, b.f_at_0) + scaled_limit(1.0 - m0, b.f(1.0 / l)));
  } else {
    c.fp_at_inf = scaled_limit(1.0 - m0, b.fp_at_inf);
  }
  c.operator_convex = base.operator_convex;
  c.fpp_at_1 = (m0 * l * l + (1.0 - m0) * (1.0 - l) * (1.0 - l)) * base.fpp_at_1;
  return c;
}

ConvexFunction make_depol_pullback(const ConvexFunction& base, double p) {
  check_unit_interval("depol_pullback p", p);
  ConvexFunction c;
  c.name = "depol_pullback";
  std::string base_tail;
  if (auto pos = base.spec.find(':'); pos != std::string::npos) {
    base_tail = "," + base.spec.substr(pos + 1);
  }
  c.spec = "depol_pullback:base=" + base.name + ",p=" + fmt_double(p) + base_tail;
  c.params = base.params;
  c.params["p"] = p;
  const double q = 1.0 - p;
  const ConvexFunction b = base;
  c.f = [p, q, b](double x) { return b.f(q * x + p); };
  c.fp = [p, q, b](double x) { return q * b.fp(q * x + p); };
  c.fpp = [p, q, b](double x) { return q * q * b.fpp(q * x + p); };
  c.f_at_0 = p > 0.0 ? base.f(p) : base.f_at_0;
  c.fp_at_inf = p < 1.0 ? scaled_limit(q, base.fp_at_inf) : 0.0;
  c.operator_convex = base.operator_convex;
  c.fpp_at_1 = q * q * base.fpp_at_1;
  return c;
}

ConvexFunction make_linear(double slope) {
  ConvexFunction c;
  c.name = "linear";
  c.spec = "linear:slope=" + fmt_double(slope);
  c.params["slope"] = slope;
  c.f = [slope](double x) { return slope * (x - 1.0); };
  c.fp = [slope](double) { return slope; };
  c.fpp = [](double) { return 0.0; };
  c.f_at_0 = -slope;
  c.fp_at_inf = slope;
  c.operator_convex = true;
  c.fpp_at_1 = 0.0;
  return c;
}

ConvexFunction star_conjugate(const ConvexFunction& base) {
  ConvexFunction c;
  c.name = "star";
  std::string base_tail;
  if (auto pos = base.spec.find(':'); pos != std::string::npos) {
    base_tail = "," + base.spec.substr(pos + 1);
  }
  c.spec = "star:base=" + base.name + base_tail;
  c.params = base.params;
  const ConvexFunction b = base;
  c.f = [b](double t) { return t * b.f(1.0 / t); };
  c.fp = [b](double t) { return b.f(1.0 / t) - b.fp(1.0 / t) / t; };
  c.fpp = [b](double t) { return b.fpp(1.0 / t) / (t * t * t); };
  c.f_at_0 = base.fp_at_inf;
  c.fp_at_inf = base.f_at_0;
  c.operator_convex = base.operator_convex;
  c.fpp_at_1 = base.fpp_at_1;
  return c;
}

double xi(const ConvexFunction& f) { return f.fp_at_inf + f.f_at_0; }

namespace {

constexpr const char* kValidNames =
    "kl, chi2, js, hellinger, lecam, skew, depol_pullback, star, linear";

double parse_number(const std::string& key, const std::string& text) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("convex function parameter '" + key +
                                "' is not a number: '" + text + "'");
  }
}

using KvList = std::vector<std::pair<std::string, std::string>>;

// Removes and returns the first occurrence of `key`; later duplicates stay
// in the list for a nested base to consume.
std::string take(KvList& kvs, const std::string& key) {
  for (auto it = kvs.begin(); it != kvs.end(); ++it) {
    if (it->first == key) {
      std::string v = it->second;
      kvs.erase(it);
      return v;
    }
  }
  throw std::invalid_argument("convex function spec is missing parameter '" +
                              key + "'");
}

std::string rebuild(const std::string& name, const KvList& kvs) {
  std::string out = name;
  char sep = ':';
  for (const auto& [k, v] : kvs) {
    out += sep;
    out += k + "=" + v;
    sep = ',';
  }
  return out;
}

ConvexFunction parse_impl(const std::string& name, KvList kvs) {
  auto done = [&kvs, &name](ConvexFunction c) {
    if (!kvs.empty()) {
      throw std::invalid_argument("convex function '" + name +
                                  "' got unexpected parameter '" +
                                  kvs.front().first + "'");
    }
    return c;
  };
  if (name == "kl") return done(make_kl());
  if (name == "chi2") return done(make_chi2());
  if (name == "js") return done(make_js());
  if (name == "linear") {
    const double s = parse_number("slope", take(kvs, "slope"));
    return done(make_linear(s));
  }
  if (name == "hellinger") {
    const double a = parse_number("alpha", take(kvs, "alpha"));
    return done(make_hellinger(a));
  }
  if (name == "lecam") {
    const double l = parse_number("lambda", take(kvs, "lambda"));
    return done(make_lecam(l));
  }
  if (name == "skew") {
    const std::string base = take(kvs, "base");
    const double l = parse_number("lambda", take(kvs, "lambda"));
    const double m = parse_number("mu", take(kvs, "mu"));
    return make_skew(parse_convex_function(rebuild(base, kvs)), l, m);
  }
  if (name == "depol_pullback") {
    const std::string base = take(kvs, "base");
    const double p = parse_number("p", take(kvs, "p"));
    return make_depol_pullback(parse_convex_function(rebuild(base, kvs)), p);
  }
  if (name == "star") {
    const std::string base = take(kvs, "base");
    return star_conjugate(parse_convex_function(rebuild(base, kvs)));
  }
  throw std::invalid_argument("unknown convex function '" + name +
                              "'; valid names: " + std::string(kValidNames));
}

}  // namespace

ConvexFunction parse_convex_function(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  KvList kvs;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string item =
          rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("malformed parameter '" + item +
                                    "' in convex function spec '" + spec + "'");
      }
      kvs.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (name.empty()) {
    throw std::invalid_argument("empty convex function spec; valid names: " +
                                std::string(kValidNames));
  }
  return parse_impl(name, std::move(kvs));
}

}  // namespace qfdiv
