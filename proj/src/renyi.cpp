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

#include "qfdiv/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qfdiv/convex.hpp"
#include "qfdiv/format.hpp"
#include "qfdiv/hockey.hpp"

namespace qfdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Probability cells at or below this count as unoccupied outcomes.
constexpr double kProbFloor = 1e-14;
// regularization_trace refuses tensor powers above this total dimension,
// which caps qubit pairs at n = 6.
constexpr double kRegDimGuard = 64.0;

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0) {
    throw std::invalid_argument("alpha must be positive and != 1, got " +
                                fmt_double(alpha));
  }
}

void check_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("dimension mismatch between states");
  }
}

// (1/(alpha-1)) ln q. q = +inf encodes an alpha > 1 support violation and
// q = 0 an alpha < 1 orthogonal pair; both map to +inf.
double renyi_transform(double q, double alpha) {
  if (!std::isfinite(q) || q <= 0.0) return kInf;
  return std::log(q) / (alpha - 1.0);
}

// Quasi-quantities shared by the public wrappers (which gate alpha) and
// the proof bounds (which evaluate slightly outside the gated windows).
double petz_q(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  if (alpha > 1.0 && !support_contained(rho.mat(), sigma.mat())) return kInf;
  const Matrix a = matrix_power(rho.mat(), alpha);
  const Matrix b = matrix_power(sigma.mat(), 1.0 - alpha);
  return (a * b).trace().real();
}

double sandwiched_q(const DensityMatrix& rho, const DensityMatrix& sigma,
                    double alpha) {
  if (alpha > 1.0 && !support_contained(rho.mat(), sigma.mat())) return kInf;
  const Matrix s = matrix_power(sigma.mat(), (1.0 - alpha) / (2.0 * alpha));
  Matrix m = s * rho.mat() * s;
  m = (m + m.adjoint()) / 2.0;
  const RealVector ev = eigvalsh(m);
  double q = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    q += std::pow(std::max(ev[i], 0.0), alpha);
  }
  return q;
}

double geometric_q(const DensityMatrix& rho, const DensityMatrix& sigma,
                   double alpha) {
  if (alpha > 1.0 && !support_contained(rho.mat(), sigma.mat())) return kInf;
  const Matrix g = pseudo_inverse_sqrt(sigma.mat());
  Matrix x = g * rho.mat() * g;
  x = (x + x.adjoint()) / 2.0;
  return (sigma.mat() * matrix_power(x, alpha)).trace().real();
}

// Outcome distributions of a projective measurement given as an
// orthonormal column basis.
std::pair<std::vector<double>, std::vector<double>> basis_outcomes(
    const Matrix& basis, const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Eigen::Index d = basis.cols();
  std::vector<double> p(static_cast<std::size_t>(d));
  std::vector<double> q(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::VectorXcd b = basis.col(k);
    p[static_cast<std::size_t>(k)] = std::max(0.0, b.dot(rho.mat() * b).real());
    q[static_cast<std::size_t>(k)] = std::max(0.0, b.dot(sigma.mat() * b).real());
  }
  return {std::move(p), std::move(q)};
}

// Haar-distributed orthonormal basis: QR of a complex Ginibre matrix with
// the R-diagonal phases absorbed into Q.
Matrix haar_basis(Eigen::Index d, Rng& rng) {
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.cnormal();
  }
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    q.col(j) *= a > 0.0 ? r(j, j) / a : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace

DivergenceValue h_alpha(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double alpha, double rel_tol) {
  check_alpha(alpha);
  check_same_dim(rho, sigma);
  return d_f_integral(make_hellinger(alpha), rho, sigma, rel_tol);
}

DivergenceValue d_alpha(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double alpha, double rel_tol) {
  const DivergenceValue h = h_alpha(rho, sigma, alpha, rel_tol);
  DivergenceValue out = h;
  if (!std::isfinite(h.value)) {
    out.abs_error = 0.0;
    return out;
  }
  if (alpha < 1.0 && h.support_flag == SupportFlag::disjoint) {
    // H_alpha saturates at 1/(1-alpha) exactly; the transform diverges.
    out.value = kInf;
    out.abs_error = 0.0;
    return out;
  }
  const double arg = 1.0 + (alpha - 1.0) * h.value;
  if (!(arg > 0.0)) {
    // Numerically indistinguishable from the divergent boundary.
    out.value = kInf;
    out.abs_error = kInf;
    return out;
  }
  out.value = std::log1p((alpha - 1.0) * h.value) / (alpha - 1.0);
  out.abs_error = h.abs_error / arg;
  return out;
}

double petz_renyi(const DensityMatrix& rho, const DensityMatrix& sigma,
                  double alpha) {
  check_alpha(alpha);
  check_same_dim(rho, sigma);
  if (alpha > 2.0) {
    throw std::invalid_argument("petz_renyi is validated on (0,1) u (1,2], got " +
                                fmt_double(alpha));
  }
  return renyi_transform(petz_q(rho, sigma, alpha), alpha);
}

double sandwiched_renyi(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double alpha) {
  check_alpha(alpha);
  check_same_dim(rho, sigma);
  if (alpha < 0.5) {
    throw std::invalid_argument(
        "sandwiched_renyi is validated on [1/2,1) u (1,inf), got " +
        fmt_double(alpha));
  }
  return renyi_transform(sandwiched_q(rho, sigma, alpha), alpha);
}

double geometric_renyi(const DensityMatrix& rho, const DensityMatrix& sigma,
                       double alpha) {
  check_alpha(alpha);
  check_same_dim(rho, sigma);
  if (alpha > 2.0) {
    throw std::invalid_argument(
        "geometric_renyi is validated on (0,1) u (1,2], got " + fmt_double(alpha));
  }
  return renyi_transform(geometric_q(rho, sigma, alpha), alpha);
}

double classical_renyi(const std::vector<double>& p, const std::vector<double>& q,
                       double alpha) {
  check_alpha(alpha);
  if (p.size() != q.size()) {
    throw std::invalid_argument("probability vectors differ in length");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < -1e-12 || q[i] < -1e-12) {
      throw std::invalid_argument("negative probability entry");
    }
    if (p[i] <= kProbFloor) continue;
    if (q[i] <= kProbFloor) {
      if (alpha > 1.0) return kInf;
      continue;
    }
    s += std::exp(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
  }
  return renyi_transform(s, alpha);
}

NsDistributions nussbaum_szkola(const DensityMatrix& rho,
                                const DensityMatrix& sigma) {
  check_same_dim(rho, sigma);
  const Spectrum sr = eigh(rho.mat());
  const Spectrum ss = eigh(sigma.mat());
  const Eigen::Index d = rho.dim();
  const Matrix overlap = sr.eigenvectors.adjoint() * ss.eigenvectors;
  NsDistributions ns;
  ns.p.assign(static_cast<std::size_t>(d * d), 0.0);
  ns.q.assign(static_cast<std::size_t>(d * d), 0.0);
  for (Eigen::Index x = 0; x < d; ++x) {
    for (Eigen::Index y = 0; y < d; ++y) {
      const double w = std::norm(overlap(x, y));
      const std::size_t cell = static_cast<std::size_t>(x * d + y);
      ns.p[cell] = std::max(sr.eigenvalues[x], 0.0) * w;
      ns.q[cell] = std::max(ss.eigenvalues[y], 0.0) * w;
    }
  }
  return ns;
}

MeasurementStrategy MeasurementStrategy::sigma_eigenbasis() {
  return {Kind::sigma_eigenbasis, 0, 0};
}
MeasurementStrategy MeasurementStrategy::rho_eigenbasis() {
  return {Kind::rho_eigenbasis, 0, 0};
}
MeasurementStrategy MeasurementStrategy::ns_pair() { return {Kind::ns_pair, 0, 0}; }
MeasurementStrategy MeasurementStrategy::random_projective(int draws,
                                                           std::uint64_t seed) {
  return {Kind::random_projective, draws, seed};
}

double measured_renyi_lower(const DensityMatrix& rho, const DensityMatrix& sigma,
                            double alpha, const MeasurementStrategy& strategy) {
  check_alpha(alpha);
  check_same_dim(rho, sigma);
  switch (strategy.kind) {
    case MeasurementStrategy::Kind::sigma_eigenbasis: {
      const auto [p, q] = basis_outcomes(eigh(sigma.mat()).eigenvectors, rho, sigma);
      return classical_renyi(p, q, alpha);
    }
    case MeasurementStrategy::Kind::rho_eigenbasis: {
      const auto [p, q] = basis_outcomes(eigh(rho.mat()).eigenvectors, rho, sigma);
      return classical_renyi(p, q, alpha);
    }
    case MeasurementStrategy::Kind::ns_pair: {
      const NsDistributions ns = nussbaum_szkola(rho, sigma);
      return classical_renyi(ns.p, ns.q, alpha);
    }
    case MeasurementStrategy::Kind::random_projective: {
      if (strategy.draws < 1) {
        throw std::invalid_argument("random_projective needs draws >= 1");
      }
      Rng rng(strategy.seed);
      double best = -kInf;
      for (int t = 0; t < strategy.draws; ++t) {
        const auto [p, q] = basis_outcomes(haar_basis(rho.dim(), rng), rho, sigma);
        best = std::max(best, classical_renyi(p, q, alpha));
      }
      return best;
    }
  }
  throw std::logic_error("unknown measurement strategy");
}

RegularizationTrace regularization_trace(const DensityMatrix& rho,
                                         const DensityMatrix& sigma, double alpha,
                                         int n_max, double rel_tol) {
  check_alpha(alpha);
  check_same_dim(rho, sigma);
  if (n_max < 1) {
    throw std::invalid_argument("n_max must be >= 1");
  }
  if (std::pow(static_cast<double>(rho.dim()), n_max) > kRegDimGuard) {
    throw std::invalid_argument("tensor power dimension exceeds the guard of " +
                                fmt_double(kRegDimGuard));
  }
  RegularizationTrace out;
  out.alpha = alpha;
  out.petz_ref = renyi_transform(petz_q(rho, sigma, alpha), alpha);
  out.sandwiched_ref = renyi_transform(sandwiched_q(rho, sigma, alpha), alpha);
  for (int n = 1; n <= n_max; ++n) {
    DivergenceValue v =
        d_alpha(tensor_power(rho, n), tensor_power(sigma, n), alpha, rel_tol);
    v.value /= n;
    v.abs_error /= n;
    out.n_values.push_back(n);
    out.per_n.push_back(v);
  }
  return out;
}

RenyiBoundChain renyi_bound_chain(const DensityMatrix& rho,
                                  const DensityMatrix& sigma, double alpha,
                                  double epsilon) {
  check_alpha(alpha);
  check_same_dim(rho, sigma);
  RenyiBoundChain out;
  out.alpha = alpha;
  out.epsilon = epsilon;
  if (alpha > 1.0) {
    if (!(epsilon > 0.0 && epsilon < alpha - 1.0)) {
      throw std::invalid_argument("epsilon must lie in (0, alpha-1), got " +
                                  fmt_double(epsilon));
    }
    const double qp = sandwiched_q(rho, sigma, alpha + epsilon);
    const double qm = sandwiched_q(rho, sigma, alpha - epsilon);
    out.upper = (std::isfinite(qp) && std::isfinite(qm))
                    ? std::log((alpha * alpha - alpha) / epsilon * (qp + qm)) /
                          (alpha - 1.0)
                    : kInf;
    out.lower = measured_renyi_lower(rho, sigma, alpha,
                                     MeasurementStrategy::sigma_eigenbasis());
  } else {
    if (!(epsilon > 0.0 && epsilon < std::min(alpha, 1.0 - alpha))) {
      throw std::invalid_argument(
          "epsilon must lie in (0, min(alpha, 1-alpha)), got " +
          fmt_double(epsilon));
    }
    const double qp = petz_q(rho, sigma, alpha + epsilon);
    const double qm = petz_q(rho, sigma, alpha - epsilon);
    const double s = alpha * (1.0 - alpha) / epsilon * (qp + qm);
    // s = 0 only for orthogonal states, where D_alpha = +inf as well.
    out.lower = s > 0.0 ? std::log(s) / (alpha - 1.0) : kInf;
    out.upper = renyi_transform(petz_q(rho, sigma, alpha), alpha) +
                std::log(2.0) / (1.0 - alpha);
  }
  return out;
}

KappaBracket kappa_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                         double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("kappa_bound needs alpha, beta > 0");
  }
  check_same_dim(rho, sigma);
  if (!support_contained(rho.mat(), sigma.mat()) ||
      !support_contained(sigma.mat(), rho.mat())) {
    throw std::invalid_argument("kappa_bound needs mutual support containment");
  }
  const double dm_rs = d_max(rho, sigma);
  const double dm_sr = d_max(sigma, rho);
  const auto kappa = [&](double a, double b) {
    return a >= b ? std::exp((b - a) * dm_sr) : std::exp((a - b) * dm_rs);
  };
  const double hb = beta == 1.0 ? umegaki(rho, sigma) : h_alpha(rho, sigma, beta).value;
  KappaBracket out;
  out.lower = alpha / beta * kappa(alpha, beta) * hb;
  out.upper = alpha / beta * hb / kappa(beta, alpha);
  return out;
}

}  // namespace qfdiv
