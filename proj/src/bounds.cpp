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

#include "qfdiv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qfdiv/hockey.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/quadrature.hpp"
#include "qfdiv/renyi.hpp"

namespace qfdiv {

namespace detail {

void InputDigest::bytes(const void* p, std::size_t n) {
  const auto* c = static_cast<const unsigned char*>(p);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= c[i];
    h *= 1099511628211ULL;
  }
}

void InputDigest::real(double x) { bytes(&x, sizeof x); }

void InputDigest::text(const std::string& s) { bytes(s.data(), s.size()); }

void InputDigest::mat(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      real(m(i, j).real());
      real(m(i, j).imag());
    }
  }
}

void InputDigest::fn(const ConvexFunction& f) {
  text(f.name);
  for (const auto& [key, value] : f.params) {
    text(key);
    real(value);
  }
}

BoundReport make_report(std::string name, double lhs, double rhs,
                        std::uint64_t digest) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = (std::isinf(rhs) && rhs > 0.0)
                ? std::numeric_limits<double>::infinity()
                : rhs - lhs;
  r.bound_name = std::move(name);
  r.inputs_digest = digest;
  return r;
}

}  // namespace detail

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::make_report;
using Digest = detail::InputDigest;

// Integral of g over [1, to] with logarithmic panel seeding; empty interval
// integrates to zero.
double log_quad(const std::function<double(double)>& g, double to,
                double rel_tol) {
  if (!(to > 1.0)) return 0.0;
  QuadOptions opt;
  opt.rel_tol = rel_tol;
  return integrate_adaptive(g, log_breakpoints(1.0, to), opt).value;
}

// D / (1 - e^{-D}), continuously extended to 1 at D = 0; +inf at D = inf.
double chord_weight_hi(double d) {
  if (d == 0.0) return 1.0;
  return d / (-std::expm1(-d));
}

// D / (1 - e^{D}), continuously extended to -1 at D = 0; 0 at D = inf.
double chord_weight_lo(double d) {
  if (d == 0.0) return -1.0;
  if (std::isinf(d)) return 0.0;
  return -d / std::expm1(d);
}

// log(1 + e^x) without overflow.
double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double entropy_from_spectrum(const Matrix& m) {
  const RealVector w = eigvalsh(m);
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) s -= w[i] * std::log(w[i]);
  }
  return s;
}

}  // namespace

std::pair<BoundReport, BoundReport> reverse_pinsker_f(const ConvexFunction& f,
                                                      const DensityMatrix& rho,
                                                      const DensityMatrix& sigma,
                                                      double rel_tol) {
  Digest dig;
  dig.text("reverse_pinsker_f");
  dig.fn(f);
  dig.mat(rho.mat());
  dig.mat(sigma.mat());

  const double dm_ab = d_max(rho, sigma);
  const double dm_ba = d_max(sigma, rho);
  const double e1 = trace_distance(rho, sigma);
  const DivergenceValue lhs = d_f_integral(f, rho, sigma, rel_tol);
  if (!std::isfinite(dm_ab) || !std::isfinite(dm_ba)) {
    return {make_report("revpin-f-zeta1", lhs.value, kInf, dig.h),
            make_report("revpin-f-zeta2", lhs.value, kInf, dig.h)};
  }
  const double ga = std::exp(dm_ab);
  const double gb = std::exp(dm_ba);
  const auto mirror = [&f](double g) {
    return f.fpp(1.0 / g) / (g * g * g);
  };
  const double z1 =
      log_quad([&](double g) { return (ga - g) / (ga - 1.0) * f.fpp(g); }, ga,
               rel_tol) +
      log_quad([&](double g) { return (gb - g) / (gb - 1.0) * mirror(g); }, gb,
               rel_tol);
  const double z2 = log_quad([&f](double g) { return f.fpp(g); }, ga, rel_tol) +
                    log_quad(mirror, gb, rel_tol);
  return {make_report("revpin-f-zeta1", lhs.value, z1 * e1, dig.h),
          make_report("revpin-f-zeta2", lhs.value, z2 * e1, dig.h)};
}

KlReversePinsker reverse_pinsker_kl(const DensityMatrix& rho,
                                    const DensityMatrix& sigma) {
  Digest dig;
  dig.text("reverse_pinsker_kl");
  dig.mat(rho.mat());
  dig.mat(sigma.mat());

  const double dm_ab = d_max(rho, sigma);
  const double dm_ba = d_max(sigma, rho);
  const double e1 = trace_distance(rho, sigma);
  const double lhs = umegaki(rho, sigma);

  // Chord-weighted kl evaluation; reduces to 0 at rho = sigma and grows to
  // +inf with D_max(rho||sigma).
  const double c0 = chord_weight_hi(dm_ab) + chord_weight_lo(dm_ba);
  KlReversePinsker out;
  out.tight = make_report("revpin-kl-tight", lhs, c0 * e1, dig.h);
  out.thompson =
      make_report("revpin-kl-thompson", lhs, thompson(rho, sigma) * e1, dig.h);
  out.omega =
      make_report("revpin-kl-omega", lhs, hilbert_omega(rho, sigma) * e1, dig.h);
  return out;
}

HellingerReversePinsker reverse_pinsker_hellinger(const DensityMatrix& rho,
                                                  const DensityMatrix& sigma,
                                                  double alpha, double rel_tol) {
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw std::invalid_argument(
        "reverse_pinsker_hellinger: alpha in (0,1) or (1,inf) required");
  }
  Digest dig;
  dig.text("reverse_pinsker_hellinger");
  dig.real(alpha);
  dig.mat(rho.mat());
  dig.mat(sigma.mat());

  const double dm_ab = d_max(rho, sigma);
  const double dm_ba = d_max(sigma, rho);
  const double e1 = trace_distance(rho, sigma);
  // Infinite D_max takes the analytic limit through IEEE exp: the decaying
  // exponentials vanish for alpha < 1, the growing one diverges for
  // alpha > 1. No explicit branch is needed.
  const double inner = alpha * std::exp((alpha - 1.0) * dm_ab) -
                       (alpha - 1.0) * std::exp(-alpha * dm_ba) - 1.0;
  const double coeff = inner / (alpha - 1.0);

  HellingerReversePinsker out;
  const DivergenceValue h = h_alpha(rho, sigma, alpha, rel_tol);
  out.hellinger = make_report("revpin-hellinger", h.value, coeff * e1, dig.h);
  const DivergenceValue d = d_alpha(rho, sigma, alpha, rel_tol);
  // inner * e1 >= -1 analytically, with equality only at orthogonal pairs;
  // the clamp stops rounding from pushing log1p past its pole.
  const double rhs_d =
      std::log1p(std::max(inner * e1, -1.0)) / (alpha - 1.0);
  out.renyi = make_report("revpin-renyi", d.value, rhs_d, dig.h);
  return out;
}

BoundReport fvdg_improved(const DensityMatrix& rho, const DensityMatrix& sigma) {
  Digest dig;
  dig.text("fvdg_improved");
  dig.mat(rho.mat());
  dig.mat(sigma.mat());
  const double fid = trace_norm(matrix_power(rho.mat(), 0.5) *
                                matrix_power(sigma.mat(), 0.5));
  const double e1 = trace_distance(rho, sigma);
  const double lower =
      1.0 - 0.5 *
                (2.0 - std::exp(-0.5 * d_max(rho, sigma)) -
                 std::exp(-0.5 * d_max(sigma, rho))) *
                e1;
  return make_report("fvdg-improved", lower, fid, dig.h);
}

BoundReport fvdg_asymmetric(const DensityMatrix& rho, const DensityMatrix& sigma) {
  Digest dig;
  dig.text("fvdg_asymmetric");
  dig.mat(rho.mat());
  dig.mat(sigma.mat());
  const double fid = trace_norm(matrix_power(rho.mat(), 0.5) *
                                matrix_power(sigma.mat(), 0.5));
  const double e1 = trace_distance(rho, sigma);
  // e^{D/2}/(1+e^{D/2}) written as 1/(1+e^{-D/2}) so the infinite branch
  // saturates at 1 instead of overflowing.
  const double lower =
      1.0 - e1 / (1.0 + std::exp(-0.5 * d_max(rho, sigma)));
  return make_report("fvdg-asymmetric", lower, fid, dig.h);
}

ContinuityReport continuity_first_arg(const ConvexFunction& f,
                                      const DensityMatrix& rho,
                                      const DensityMatrix& tau,
                                      const DensityMatrix& sigma,
                                      double rel_tol) {
  Digest dig;
  dig.text("continuity_first_arg");
  dig.fn(f);
  dig.mat(rho.mat());
  dig.mat(tau.mat());
  dig.mat(sigma.mat());

  const double dm_ab = d_max(rho, sigma);
  const double dm_ba = d_max(sigma, rho);
  const double e1 = trace_distance(rho, tau);

  const DivergenceValue d1 = d_f_integral(f, rho, sigma, rel_tol);
  const DivergenceValue d2 = d_f_integral(f, tau, sigma, rel_tol);
  double lhs = d1.value - d2.value;
  if (std::isinf(d1.value) && std::isinf(d2.value)) lhs = 0.0;

  double w_hi;
  if (std::isfinite(dm_ab)) {
    w_hi = log_quad([&f](double s) { return f.fpp(s); }, std::exp(dm_ab),
                    rel_tol);
  } else {
    // Full f''-mass above 1; exact from the registry endpoint data.
    w_hi = f.fp_at_inf - f.fp(1.0);
  }
  double w_lo;
  if (std::isfinite(dm_ba)) {
    w_lo = log_quad(
        [&f](double s) { return f.fpp(1.0 / s) / (s * s); }, std::exp(dm_ba),
        rel_tol);
  } else {
    // The mirrored weight needs f' at 0+, which the registry does not carry;
    // the bound stays valid as +inf.
    w_lo = kInf;
  }

  // rho = tau makes the bound 0 <= 0 for any weight, including infinite
  // ones; scaling by e1 = 0 directly would turn those into NaN.
  const auto scaled = [e1](double w) { return e1 == 0.0 ? 0.0 : w * e1; };

  ContinuityReport out;
  out.general = make_report("continuity-general", lhs, scaled(w_hi + w_lo), dig.h);

  if (f.name == "kl") {
    out.closed = make_report("continuity-kl-omega", lhs,
                             scaled(hilbert_omega(rho, sigma)), dig.h);
  } else if (f.name == "js") {
    const double coeff =
        0.5 * (dm_ba + std::log1p(std::exp(-dm_ba)) - softplus(-dm_ab));
    out.closed = make_report("continuity-js", lhs, scaled(coeff), dig.h);
  } else if (f.name == "hellinger") {
    const double alpha = f.params.at("alpha");
    const double coeff = alpha / (alpha - 1.0) *
                         (std::exp((alpha - 1.0) * dm_ab) -
                          std::exp((1.0 - alpha) * dm_ba));
    out.closed = make_report("continuity-hellinger", lhs, scaled(coeff), dig.h);
  }
  return out;
}

BoundReport entropy_continuity(const DensityMatrix& rho,
                               const DensityMatrix& sigma) {
  Digest dig;
  dig.text("entropy_continuity");
  dig.mat(rho.mat());
  dig.mat(sigma.mat());
  const double lhs = std::abs(entropy_from_spectrum(rho.mat()) -
                              entropy_from_spectrum(sigma.mat()));
  const auto spread = [](const Matrix& m) {
    const RealVector w = eigvalsh(m);
    const double lo = w.minCoeff();
    if (!(lo > 0.0)) return kInf;
    return w.maxCoeff() / lo;
  };
  const double e1 = trace_distance(rho, sigma);
  const double w = std::log(std::max(spread(rho.mat()), spread(sigma.mat())));
  return make_report("entropy-continuity", lhs, e1 == 0.0 ? 0.0 : w * e1,
                     dig.h);
}

BoundReport amortized_bound(const ConvexFunction& f, const QuantumChannel& ch_a,
                            const QuantumChannel& ch_b,
                            const AmortizedConfig& cfg) {
  const double x = xi(f);
  if (!std::isfinite(x)) {
    throw std::domain_error("amortized_bound: xi(" + f.name +
                            ") diverges; the bound needs finite f'(inf) and f(0+)");
  }
  if (ch_a.dim_in() != ch_b.dim_in() || ch_a.dim_out() != ch_b.dim_out()) {
    throw std::invalid_argument("amortized_bound: channel dimensions differ");
  }
  if (cfg.n_samples < 1) {
    throw std::invalid_argument("amortized_bound: n_samples >= 1");
  }
  Digest dig;
  dig.text("amortized_bound");
  dig.fn(f);
  for (const Matrix& k : ch_a.kraus()) dig.mat(k);
  for (const Matrix& k : ch_b.kraus()) dig.mat(k);
  dig.bytes(&cfg.seed, sizeof cfg.seed);

  const Eigen::Index d = ch_a.dim_in();
  const QuantumChannel ext_a = tensor_with_identity(ch_a, d);
  const QuantumChannel ext_b = tensor_with_identity(ch_b, d);
  const Eigen::Index de = d * d;

  // Diamond-norm lower estimate. Every state fed to both extended channels
  // certifies a value, so the sampled marginals below join the ascent
  // witnesses; jointly they make the reported slack nonnegative sample by
  // sample (the tail weights of D_f are bounded by the marginal distances).
  double e1 = 0.0;
  const auto diamond_at = [&](const DensityMatrix& in) {
    const double v =
        trace_distance(apply_channel(ext_a, in), apply_channel(ext_b, in));
    e1 = std::max(e1, v);
  };

  double lhs = 0.0;  // rho = sigma realizes a nonnegative candidate
  for (int s = 0; s < cfg.n_samples; ++s) {
    const int rank_r = 1 + (s % static_cast<int>(de));
    const int rank_s = 1 + ((s / static_cast<int>(de)) % static_cast<int>(de));
    const DensityMatrix rho =
        random_density(de, rank_r, cfg.seed ^ (2ULL * s + 1ULL));
    const DensityMatrix sig =
        random_density(de, rank_s, cfg.seed ^ (2ULL * s + 2ULL));
    diamond_at(rho);
    diamond_at(sig);
    const DivergenceValue up = d_f_integral(
        f, apply_channel(ext_a, rho), apply_channel(ext_b, sig), cfg.rel_tol);
    const DivergenceValue low = d_f_integral(f, rho, sig, cfg.rel_tol);
    lhs = std::max(lhs, up.value - low.value);
  }

  // Multi-start ascent over pure bipartite inputs for the diamond estimate.
  for (int r = 0; r < cfg.diamond.restarts; ++r) {
    Rng rng(cfg.diamond.seed ^ (0x9e3779b97f4a7c15ULL * (r + 1)));
    Eigen::VectorXcd psi(de);
    for (Eigen::Index i = 0; i < de; ++i) psi[i] = rng.cnormal();
    psi.normalize();
    const auto value_at = [&](const Eigen::VectorXcd& v) {
      return trace_distance(apply_channel(ext_a, pure_density(v)),
                            apply_channel(ext_b, pure_density(v)));
    };
    double cur = value_at(psi);
    double step = 0.4;
    for (int it = 0; it < cfg.diamond.max_iters && step >= cfg.diamond.step_tol;
         ++it) {
      Eigen::VectorXcd cand = psi;
      for (Eigen::Index i = 0; i < de; ++i) cand[i] += step * rng.cnormal();
      const double n = cand.norm();
      if (n < 1e-12) continue;
      cand /= n;
      const double v = value_at(cand);
      if (v > cur) {
        cur = v;
        psi = std::move(cand);
        step = std::min(step * 1.5, 0.8);
      } else {
        step *= 0.7;
      }
    }
    e1 = std::max(e1, cur);
  }

  return make_report("amortized-" + f.name, lhs, x * e1, dig.h);
}

}  // namespace qfdiv
