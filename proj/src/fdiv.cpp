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

#include "qfdiv/fdiv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qfdiv/format.hpp"
#include "qfdiv/hockey.hpp"
#include "qfdiv/quadrature.hpp"

namespace qfdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGammaCap = 1e300;

void check_rel_tol(double rel_tol) {
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-2)) {
    throw std::invalid_argument("rel_tol must lie in [1e-12, 1e-2], got " +
                                fmt_double(rel_tol));
  }
}

// Hockey-stick functional: E_gamma for states, Ẽ_gamma for general PSD.
// Must be non-increasing in gamma and vanish beyond exp(d_max(a||b)).
using EFn = std::function<double(const Matrix&, const Matrix&, double)>;

// Mass of f'' remaining above gamma. Finite only when fp_at_inf is.
double weight_hi(const ConvexFunction& f, double gamma) {
  return f.fp_at_inf - f.fp(gamma);
}

// Mass of t f''(t) below a: a f'(a) - f(a) + f(0+). Equals the gamma > 1/a
// mass of the mirrored integrand gamma^-3 f''(1/gamma).
double weight_lo(const ConvexFunction& f, double a) {
  return a * f.fp(a) - f.f(a) + f.f_at_0;
}

struct Limits {
  double hi = 1.0;      // E(rho||sigma) side vanishes at or beyond hi
  double lo = 1.0;      // E(sigma||rho) side vanishes at or below lo
  double tail_hi = 0.0; // analytic bound on the discarded gamma > hi mass
  double tail_lo = 0.0; // analytic bound on the discarded gamma < lo mass
  double add = 0.0;     // closed-form tail mass, added to the value
  bool infinite = false;
};

// gamma -> inf limit of the hockey-stick: the mass of a outside supp b.
// Positive exactly when d_max(a||b) is infinite.
double e_limit(const Matrix& a, const Matrix& b) {
  const Matrix q =
      Matrix::Identity(b.rows(), b.cols()) - support_projector(b);
  return std::max((a * q).trace().real(), 0.0);
}

// Truncation points for both gamma tails. Where E decays to a nonzero
// limit c the constant part of the tail integrates in closed form
// (c times the remaining f''-mass) and lands in Limits::add; only the
// decaying excess E - c drives the truncation search and stays charged
// to abs_error. Without the split the search would chase the noise floor
// of E into astronomically large gamma.
Limits plan_limits(const ConvexFunction& f, const Matrix& a, const Matrix& b,
                   double dm_ab, double dm_ba, const EFn& e, double rel_tol,
                   double scale) {
  Limits lim;
  const double target = 0.25 * rel_tol * scale;
  if (std::isfinite(dm_ab)) {
    lim.hi = std::min(std::exp(dm_ab), kGammaCap);
  } else if (!std::isfinite(f.fp_at_inf)) {
    // A divergent f''-tail meets E bounded away from zero: D_f = +inf.
    lim.infinite = true;
    return lim;
  } else {
    const double c = e_limit(a, b);
    double g = 2.0;
    double wb = weight_hi(f, g) * std::max(0.0, e(a, b, g) - c);
    while (wb > target && g < kGammaCap) {
      g = std::min(g * 2.0, kGammaCap);
      wb = weight_hi(f, g) * std::max(0.0, e(a, b, g) - c);
    }
    lim.hi = g;
    lim.tail_hi = wb;
    lim.add += c * weight_hi(f, g);
  }
  if (std::isfinite(dm_ba)) {
    lim.lo = std::exp(-dm_ba);
  } else if (!std::isfinite(f.f_at_0)) {
    lim.infinite = true;
    return lim;
  } else {
    const double c = e_limit(b, a);
    double aa = 0.5;
    double wb = weight_lo(f, aa) * std::max(0.0, e(b, a, 1.0 / aa) - c);
    while (wb > target) {
      const double next = aa * 0.5;
      // Stop where f'' overflows (possible for hellinger with tiny alpha)
      // or weight_lo nears its cancellation floor; the remaining mass
      // stays charged to abs_error.
      if (next < 1e-18 || !std::isfinite(f.fpp(next))) break;
      aa = next;
      wb = weight_lo(f, aa) * std::max(0.0, e(b, a, 1.0 / aa) - c);
    }
    lim.lo = aa;
    lim.tail_lo = wb;
    lim.add += c * weight_lo(f, aa);
  }
  return lim;
}

struct Segment {
  std::function<double(double)> g;
  double from = 1.0, to = 1.0;
  double extra_breakpoint = 0.0;  // inserted if it falls inside (from, to)
};

std::vector<double> segment_breakpoints(const Segment& s) {
  std::vector<double> pts = log_breakpoints(s.from, s.to);
  if (s.extra_breakpoint > s.from && s.extra_breakpoint < s.to) {
    pts.push_back(s.extra_breakpoint);
    std::sort(pts.begin(), pts.end());
  }
  return pts;
}

DivergenceValue run_engine(
    const ConvexFunction& f, const Matrix& a, const Matrix& b, const EFn& e,
    double leading, double rel_tol, SupportFlag flag,
    const std::function<std::vector<Segment>(const Limits&)>& make_segments) {
  const double dm_ab = d_max(a, b);
  const double dm_ba = d_max(b, a);
  double scale = 1.0;
  for (int pass = 0; pass < 2; ++pass) {
    const Limits lim = plan_limits(f, a, b, dm_ab, dm_ba, e, rel_tol, scale);
    if (lim.infinite) return {kInf, 0.0, flag};
    double value = leading + lim.add;
    double err = 0.0;
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    for (const Segment& s : make_segments(lim)) {
      if (!(s.to > s.from)) continue;
      const QuadOutcome out = integrate_adaptive(s.g, segment_breakpoints(s), opt);
      value += out.value;
      err += out.abs_error;
    }
    const double tail = lim.tail_hi + lim.tail_lo;
    if (pass == 1 || tail <= rel_tol * std::max(std::abs(value), 1e-300)) {
      return {value, err + tail, flag};
    }
    scale = std::max(std::abs(value), 1e-300);
  }
  return {};  // unreachable
}

double e_states(const Matrix& a, const Matrix& b, double gamma) {
  return detail::e_gamma_raw(a, b, gamma);
}

// E_gamma at gamma < 1 through the exact exchange identity
// E_gamma(rho||sigma) = gamma E_{1/gamma}(sigma||rho); evaluating the
// definition directly there loses the value to cancellation once
// gamma E_{1/gamma} drops near machine epsilon.
double e_states_low(const Matrix& a, const Matrix& b, double gamma) {
  if (gamma >= 1.0) return detail::e_gamma_raw(a, b, gamma);
  return gamma * detail::e_gamma_raw(b, a, 1.0 / gamma);
}

}  // namespace

const char* support_flag_name(SupportFlag flag) {
  switch (flag) {
    case SupportFlag::full: return "full";
    case SupportFlag::first_in_second: return "first_in_second";
    case SupportFlag::disjoint: return "disjoint";
    case SupportFlag::other: return "other";
  }
  return "other";
}

SupportFlag classify_support(const Matrix& a_psd, const Matrix& b_psd) {
  const bool ab = support_contained(a_psd, b_psd);
  const bool ba = support_contained(b_psd, a_psd);
  if (ab && ba) return SupportFlag::full;
  if (ab) return SupportFlag::first_in_second;
  if (support_orthogonal(a_psd, b_psd)) return SupportFlag::disjoint;
  return SupportFlag::other;
}

DivergenceValue d_f_integral(const ConvexFunction& f, const DensityMatrix& rho,
                             const DensityMatrix& sigma, double rel_tol) {
  check_rel_tol(rel_tol);
  const Matrix& a = rho.mat();
  const Matrix& b = sigma.mat();
  const SupportFlag flag = classify_support(a, b);
  auto segments = [&f, &a, &b](const Limits& lim) {
    std::vector<Segment> segs;
    segs.push_back({[&f, &a, &b](double g) {
                      return f.fpp(g) * detail::e_gamma_raw(a, b, g);
                    },
                    1.0, lim.hi});
    segs.push_back({[&f, &a, &b](double g) {
                      return f.fpp(1.0 / g) / (g * g * g) *
                             detail::e_gamma_raw(b, a, g);
                    },
                    1.0, lim.lo < 1.0 ? 1.0 / lim.lo : 1.0});
    return segs;
  };
  return run_engine(f, a, b, e_states, 0.0, rel_tol, flag, segments);
}

DivergenceValue d_f_single_integral(const ConvexFunction& f,
                                    const DensityMatrix& rho,
                                    const DensityMatrix& sigma,
                                    double rel_tol) {
  check_rel_tol(rel_tol);
  const Matrix& a = rho.mat();
  const Matrix& b = sigma.mat();
  const SupportFlag flag = classify_support(a, b);
  auto integrand = [&f, &a, &b](double g) {
    return f.fpp(g) * e_states_low(a, b, g);
  };
  auto segments = [&integrand](const Limits& lim) {
    std::vector<Segment> segs;
    segs.push_back({integrand, lim.lo, 1.0});
    segs.push_back({integrand, 1.0, lim.hi});
    return segs;
  };
  return run_engine(f, a, b, e_states, 0.0, rel_tol, flag, segments);
}

DivergenceValue d_f_degroot(const ConvexFunction& f, const DensityMatrix& rho,
                            const DensityMatrix& sigma, double rel_tol) {
  check_rel_tol(rel_tol);
  const Matrix& a = rho.mat();
  const Matrix& b = sigma.mat();
  const SupportFlag flag = classify_support(a, b);
  // u = (1-p)/p. For u < 1 the prior 1/(1+u) sits near 1 where forming
  // 1-p loses precision, so route through the swap symmetry
  // I_p(rho,sigma) = I_{1-p}(sigma,rho) with 1-p = u/(1+u) formed directly.
  auto integrand = [&f, &rho, &sigma](double u) {
    const double w = (1.0 + u) * f.fpp(u);
    if (u >= 1.0) return w * degroot_info(1.0 / (1.0 + u), rho, sigma);
    return w * degroot_info(u / (1.0 + u), sigma, rho);
  };
  auto segments = [&integrand](const Limits& lim) {
    std::vector<Segment> segs;
    segs.push_back({integrand, lim.lo, 1.0});
    segs.push_back({integrand, 1.0, lim.hi});
    return segs;
  };
  return run_engine(f, a, b, e_states, 0.0, rel_tol, flag, segments);
}

double umegaki(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!support_contained(rho.mat(), sigma.mat())) return kInf;
  const Spectrum sr = eigh(rho.mat());
  const Spectrum ss = eigh(sigma.mat());
  const double cut_r = kSupportRelTol * std::max(sr.eigenvalues.maxCoeff(), 0.0);
  const double cut_s = kSupportRelTol * std::max(ss.eigenvalues.maxCoeff(), 0.0);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sr.eigenvalues.size(); ++i) {
    const double l = sr.eigenvalues[i];
    if (l > cut_r) acc += l * std::log(l);
  }
  for (Eigen::Index j = 0; j < ss.eigenvalues.size(); ++j) {
    const double m = ss.eigenvalues[j];
    if (m <= cut_s) continue;
    const double w =
        (ss.eigenvectors.col(j).adjoint() * rho.mat() * ss.eigenvectors.col(j))
            .value()
            .real();
    acc -= w * std::log(m);
  }
  return acc;
}

double chi2_closed(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!support_contained(rho.mat(), sigma.mat())) return kInf;
  const Spectrum ss = eigh(sigma.mat());
  const double cut = kSupportRelTol * std::max(ss.eigenvalues.maxCoeff(), 0.0);
  const Matrix r = ss.eigenvectors.adjoint() * rho.mat() * ss.eigenvectors;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ss.eigenvalues.size(); ++i) {
    const double li = ss.eigenvalues[i];
    if (li <= cut) continue;
    for (Eigen::Index j = 0; j < ss.eigenvalues.size(); ++j) {
      const double lj = ss.eigenvalues[j];
      if (lj <= cut) continue;
      const double d = li - lj;
      // Reciprocal logarithmic mean; series-free midpoint rule once the
      // log1p quotient would lose digits.
      const double c =
          std::abs(d) < 1e-8 * (li + lj) ? 2.0 / (li + lj) : std::log1p(d / lj) / d;
      acc += std::norm(r(i, j)) * c;
    }
  }
  return acc - 1.0;
}

double local_chi2_limit(const ConvexFunction& f, const DensityMatrix& rho,
                        const DensityMatrix& sigma,
                        const std::vector<double>& lambdas) {
  if (!(f.fpp_at_1 > 0.0) || !std::isfinite(f.fpp_at_1)) {
    throw std::invalid_argument("local_chi2_limit needs fpp_at_1 in (0, inf)");
  }
  if (!support_contained(rho.mat(), sigma.mat()) ||
      !support_contained(sigma.mat(), rho.mat())) {
    throw std::invalid_argument(
        "local_chi2_limit requires mutual support containment");
  }
  if (lambdas.size() < 2) {
    throw std::invalid_argument("local_chi2_limit needs at least two lambdas");
  }
  std::vector<double> x = lambdas;
  std::sort(x.begin(), x.end(), std::greater<double>());
  std::vector<double> y;
  y.reserve(x.size());
  for (const double l : x) {
    if (!(l > 0.0 && l < 1.0)) {
      throw std::invalid_argument("local_chi2_limit lambdas must lie in (0,1)");
    }
    const Matrix mixed = l * rho.mat() + (1.0 - l) * sigma.mat();
    const DivergenceValue d =
        d_f_integral(f, DensityMatrix::trusted(mixed), sigma, 1e-9);
    y.push_back(2.0 / (l * l) * d.value);
  }
  // Neville at lambda = 0: the curve is fpp_at_1 chi^2 + O(lambda).
  const size_t n = x.size();
  for (size_t k = 1; k < n; ++k) {
    for (size_t i = 0; i + k < n; ++i) {
      y[i] = (x[i + k] * y[i] - x[i] * y[i + 1]) / (x[i + k] - x[i]);
    }
  }
  return y[0];
}

DivergenceValue skew_divergence(const ConvexFunction& f, double lambda,
                                double mu, const DensityMatrix& rho,
                                const DensityMatrix& sigma, double rel_tol) {
  check_rel_tol(rel_tol);
  if (!(lambda >= 0.0 && lambda <= 1.0) || !(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("skew_divergence needs lambda, mu in [0,1]");
  }
  const Matrix mixed = lambda * rho.mat() + (1.0 - lambda) * sigma.mat();
  const DensityMatrix mix = DensityMatrix::trusted(mixed);
  double value = 0.0;
  double err = 0.0;
  if (mu < 1.0) {
    const DivergenceValue d = d_f_integral(f, rho, mix, rel_tol);
    value += (1.0 - mu) * d.value;
    err += (1.0 - mu) * d.abs_error;
  }
  if (mu > 0.0) {
    const DivergenceValue d = d_f_integral(f, sigma, mix, rel_tol);
    value += mu * d.value;
    err += mu * d.abs_error;
  }
  return {value, err, classify_support(rho.mat(), sigma.mat())};
}

double d_f_upper_bound(const ConvexFunction& f, const DensityMatrix& rho,
                       const DensityMatrix& sigma) {
  const double dm_rs = d_max(rho, sigma);
  const double dm_sr = d_max(sigma, rho);
  double low_term;
  if (std::isinf(dm_sr)) {
    low_term = f.f_at_0;
  } else {
    const double x = std::exp(-dm_sr);
    low_term = f.f(x) - x * f.fp(x);
  }
  const double high_term = std::isinf(dm_rs) ? f.fp_at_inf : f.fp(std::exp(dm_rs));
  return low_term + high_term;
}

double classical_f_div(const std::vector<double>& p,
                       const std::vector<double>& q, const ConvexFunction& f) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("classical_f_div needs equal-length vectors");
  }
  double sp = 0.0, sq = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < -1e-12 || q[i] < -1e-12) {
      throw std::invalid_argument("classical_f_div entries must be nonnegative");
    }
    sp += p[i];
    sq += q[i];
  }
  if (std::abs(sp - 1.0) > 1e-8 || std::abs(sq - 1.0) > 1e-8) {
    throw std::invalid_argument("classical_f_div vectors must sum to 1");
  }
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double pi = std::max(p[i], 0.0);
    const double qi = std::max(q[i], 0.0);
    if (qi > 0.0) {
      acc += pi > 0.0 ? qi * f.f(pi / qi) : qi * f.f_at_0;
    } else if (pi > 0.0) {
      acc += pi * f.fp_at_inf;
    }
  }
  return acc;
}

DivergenceValue d_f_generalized(const ConvexFunction& f,
                                const HermitianOperator& a,
                                const HermitianOperator& b, double rel_tol) {
  check_rel_tol(rel_tol);
  detail::require_psd(a.mat(), "d_f_generalized first argument");
  detail::require_psd(b.mat(), "d_f_generalized second argument");
  const double tr_a = a.mat().trace().real();
  const double tr_b = b.mat().trace().real();
  if (!(tr_a > 0.0) || !(tr_b > 0.0)) {
    throw std::invalid_argument("d_f_generalized needs positive traces");
  }
  const Matrix& am = a.mat();
  const Matrix& bm = b.mat();
  const SupportFlag flag = classify_support(am, bm);
  // Ẽ has a kink where the trace difference changes sign.
  const double cross_ab = tr_a / tr_b;
  const double cross_ba = tr_b / tr_a;
  auto segments = [&f, &am, &bm, cross_ab, cross_ba](const Limits& lim) {
    std::vector<Segment> segs;
    segs.push_back({[&f, &am, &bm](double g) {
                      return f.fpp(g) * e_gamma_tilde(am, bm, g);
                    },
                    1.0, lim.hi, cross_ab});
    segs.push_back({[&f, &am, &bm](double g) {
                      return f.fpp(1.0 / g) / (g * g * g) *
                             e_gamma_tilde(bm, am, g);
                    },
                    1.0, lim.lo < 1.0 ? 1.0 / lim.lo : 1.0, cross_ba});
    return segs;
  };
  auto e_tilde = [](const Matrix& x, const Matrix& y, double g) {
    return e_gamma_tilde(x, y, g);
  };
  return run_engine(f, am, bm, e_tilde, tr_a - tr_b, rel_tol, flag, segments);
}

}  // namespace qfdiv
