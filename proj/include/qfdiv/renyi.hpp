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

#ifndef QFDIV_RENYI_HPP
#define QFDIV_RENYI_HPP

#include <cstdint>
#include <vector>

#include "qfdiv/fdiv.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// Integral Renyi-Hellinger quantity
//   H_alpha = alpha * int_1^inf gamma^(alpha-2) E_gamma(rho||sigma)
//                             + gamma^(-alpha-1) E_gamma(sigma||rho) dgamma,
// i.e. the f-divergence for f = (x^alpha - 1)/(alpha - 1). alpha in
// (0,1) u (1,inf).
DivergenceValue h_alpha(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double alpha, double rel_tol = 1e-8);

// D_alpha = (1/(alpha-1)) ln(1 + (alpha-1) H_alpha). +infinity when
// alpha > 1 and supp(rho) is not inside supp(sigma), and when alpha < 1
// and the states are orthogonal.
DivergenceValue d_alpha(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double alpha, double rel_tol = 1e-8);

// Closed-form comparators, each restricted to the alpha range on which it
// is a validated quantum Renyi divergence:
//   petz:       (0,1) u (1,2],    (1/(a-1)) ln Tr rho^a sigma^(1-a)
//   sandwiched: [1/2,1) u (1,inf) (1/(a-1)) ln Tr (sig^((1-a)/2a) rho sig^((1-a)/2a))^a
//   geometric:  (0,1) u (1,2],    (1/(a-1)) ln Tr sigma^(1/2) (sig^-(1/2) rho sig^(-1/2))^a sigma^(1/2)
// +infinity when alpha > 1 and supp(rho) !< supp(sigma), or alpha < 1 and
// the states are orthogonal. alpha outside the range throws.
double petz_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);
double sandwiched_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);
double geometric_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

// Classical Renyi divergence of two probability vectors (same conventions
// as the quantum case: alpha > 1 needs supp(p) inside supp(q)).
double classical_renyi(const std::vector<double>& p, const std::vector<double>& q,
                       double alpha);

// Nussbaum-Szkola distributions on d^2 outcomes, indexed x*d + y:
//   P(x,y) = r_x |<v_x|u_y>|^2,  Q(x,y) = s_y |<v_x|u_y>|^2,
// where rho = sum r_x |v_x><v_x| and sigma = sum s_y |u_y><u_y|. Their
// classical Hellinger transform reproduces the Petz quantity exactly.
struct NsDistributions {
  std::vector<double> p;
  std::vector<double> q;
};
NsDistributions nussbaum_szkola(const DensityMatrix& rho, const DensityMatrix& sigma);

// Measurement families for certified lower bounds on the measured Renyi
// divergence. ns_pair evaluates the Nussbaum-Szkola classical value, which
// equals the Petz divergence; it is NOT induced by a measurement and can
// exceed d_alpha, so certified maxima must exclude it.
struct MeasurementStrategy {
  enum class Kind { sigma_eigenbasis, rho_eigenbasis, ns_pair, random_projective };
  Kind kind = Kind::sigma_eigenbasis;
  int draws = 0;
  std::uint64_t seed = 0;

  static MeasurementStrategy sigma_eigenbasis();
  static MeasurementStrategy rho_eigenbasis();
  static MeasurementStrategy ns_pair();
  static MeasurementStrategy random_projective(int draws, std::uint64_t seed);
};
double measured_renyi_lower(const DensityMatrix& rho, const DensityMatrix& sigma,
                            double alpha, const MeasurementStrategy& strategy);

// Tensor-power regularization data: per_n holds (1/n) D_alpha(rho^n||sigma^n)
// together with the two closed-form candidates for the n -> inf limit.
struct RegularizationTrace {
  double alpha = 0.0;
  std::vector<int> n_values;
  std::vector<DivergenceValue> per_n;
  double petz_ref = 0.0;
  double sandwiched_ref = 0.0;
};
RegularizationTrace regularization_trace(const DensityMatrix& rho,
                                         const DensityMatrix& sigma, double alpha,
                                         int n_max, double rel_tol = 1e-8);

// Explicit single-copy proof bounds. For alpha > 1 (0 < eps < alpha-1):
//   upper = (1/(a-1)) ln[ ((a^2-a)/eps) (Qs_(a+eps) + Qs_(a-eps)) ]
// with the sandwiched quasi-quantities, lower = sigma-eigenbasis measured
// value. For alpha < 1 (0 < eps < min(alpha, 1-alpha)):
//   lower = (1/(a-1)) ln( (a(1-a)/eps) (Qp_(a+eps) + Qp_(a-eps)) )
// with the Petz quasi-quantities, upper = petz + ln(2)/(1-a).
struct RenyiBoundChain {
  double alpha = 0.0;
  double epsilon = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
RenyiBoundChain renyi_bound_chain(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  double alpha, double epsilon);

// Multiplicative continuity bracket
//   (alpha/beta) kappa(alpha,beta) H_beta <= H_alpha
//                                         <= (alpha/beta) kappa(beta,alpha)^-1 H_beta
// with kappa(a,b) = exp((b-a) D_max(sigma||rho)) for a >= b and
// exp((a-b) D_max(rho||sigma)) otherwise. Requires mutual support
// containment; H_1 means the relative entropy.
struct KappaBracket {
  double lower = 0.0;
  double upper = 0.0;
};
KappaBracket kappa_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                         double alpha, double beta);

}  // namespace qfdiv

#endif  // QFDIV_RENYI_HPP
