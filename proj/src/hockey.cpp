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

#include "qfdiv/hockey.hpp"

#include <cmath>
#include <limits>

namespace qfdiv {

namespace {

// Tr(a - gamma b)_+ for arbitrary stiffness. A dense eigh of a - gamma b
// carries absolute error ~ eps * gamma * ||b||, which buries the O(||a||)
// positive eigenvalues once gamma is large. Directions of b with
// gamma mu_i >> ||a|| cannot host positive spectrum, so they are deflated
// through the exact Schur complement; what remains has moderate norm. The
// split threshold balances the two error terms (eps * kappa vs
// ||a||^3 / kappa^2) near eps^(-1/3).
double pencil_positive_trace(const Matrix& a, const Matrix& b, double gamma) {
  const double kappa = 2e5 * a.norm();
  const Eigen::Index d = a.rows();
  const Spectrum sb = eigh(b);
  RealVector mu = sb.eigenvalues.cwiseMax(0.0);
  if (!(gamma * mu.maxCoeff() > kappa)) {
    return positive_part_trace(a - gamma * b);
  }
  std::vector<Eigen::Index> deep, soft;
  for (Eigen::Index i = 0; i < d; ++i) {
    (gamma * mu[i] > kappa ? deep : soft).push_back(i);
  }
  if (soft.empty()) return 0.0;  // a - gamma b <= ||a|| - kappa < 0
  Matrix ud(d, static_cast<Eigen::Index>(deep.size()));
  Matrix us(d, static_cast<Eigen::Index>(soft.size()));
  for (std::size_t k = 0; k < deep.size(); ++k)
    ud.col(static_cast<Eigen::Index>(k)) = sb.eigenvectors.col(deep[k]);
  for (std::size_t k = 0; k < soft.size(); ++k)
    us.col(static_cast<Eigen::Index>(k)) = sb.eigenvectors.col(soft[k]);
  Matrix neg_add = -(ud.adjoint() * a * ud);  // gamma mu_deep - a_dd, PD
  for (std::size_t k = 0; k < deep.size(); ++k)
    neg_add(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) +=
        gamma * mu[deep[k]];
  const Matrix asd = us.adjoint() * a * ud;
  Matrix s_eff = us.adjoint() * a * us + asd * neg_add.llt().solve(asd.adjoint());
  for (std::size_t k = 0; k < soft.size(); ++k)
    s_eff(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) -=
        gamma * mu[soft[k]];
  return positive_part_trace(0.5 * (s_eff + s_eff.adjoint().eval()));
}

}  // namespace

namespace detail {

double e_gamma_raw(const Matrix& a, const Matrix& b, double gamma) {
  const double pos = pencil_positive_trace(a, b, gamma);
  const double tr = a.trace().real() - gamma * b.trace().real();
  return pos - std::max(tr, 0.0);
}

}  // namespace detail

double e_gamma(const HermitianOperator& a, const HermitianOperator& b, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("e_gamma: gamma >= 0 required");
  detail::require_psd(a.mat(), "e_gamma(A)");
  detail::require_psd(b.mat(), "e_gamma(B)");
  return detail::e_gamma_raw(a.mat(), b.mat(), gamma);
}

double e_gamma(const DensityMatrix& rho, const DensityMatrix& sigma, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("e_gamma: gamma >= 0 required");
  return detail::e_gamma_raw(rho.mat(), sigma.mat(), gamma);
}

double e_gamma_tilde(const Matrix& a, const Matrix& b, double gamma) {
  return pencil_positive_trace(a, b, gamma);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return e_gamma(rho, sigma, 1.0);
}

double d_max(const Matrix& a_psd, const Matrix& b_psd) {
  if (!support_contained(a_psd, b_psd)) {
    return std::numeric_limits<double>::infinity();
  }
  const Matrix bi = pseudo_inverse_sqrt(b_psd);
  const Matrix x = bi * a_psd * bi;
  const RealVector w = eigvalsh(0.5 * (x + x.adjoint().eval()));
  const double top = w.maxCoeff();
  if (top <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(top);
}

double d_max(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return d_max(rho.mat(), sigma.mat());
}

double thompson(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::max(d_max(rho, sigma), d_max(sigma, rho));
}

double hilbert_omega(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return d_max(rho, sigma) + d_max(sigma, rho);
}

double bayes_error(double p, const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("bayes_error: p in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  if (p <= 0.5) {
    return p * (1.0 - e_gamma(rho, sigma, (1.0 - p) / p));
  }
  return (1.0 - p) * (1.0 - e_gamma(sigma, rho, p / (1.0 - p)));
}

double degroot_info(double p, const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("degroot_info: p in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return std::min(p, 1.0 - p) - bayes_error(p, rho, sigma);
}

}  // namespace qfdiv
