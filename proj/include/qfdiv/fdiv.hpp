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

#include <vector>

#include "qfdiv/convex.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

enum class SupportFlag { full, first_in_second, disjoint, other };

const char* support_flag_name(SupportFlag flag);
SupportFlag classify_support(const Matrix& a_psd, const Matrix& b_psd);

struct DivergenceValue {
  double value = 0.0;      // +inf when the tail analysis proves divergence
  double abs_error = 0.0;  // quadrature estimate plus analytic tail bounds
  SupportFlag support_flag = SupportFlag::full;
};

// D_f(rho||sigma) as the hockey-stick integral over [1, inf) in both
// argument orders, each side truncated exactly where the integrand vanishes.
// Infinite max-divergence on a side triggers the tail analysis: a divergent
// f''-tail against a support violation returns +inf, an integrable one is
// bounded analytically and charged to abs_error.
DivergenceValue d_f_integral(const ConvexFunction& f, const DensityMatrix& rho,
                             const DensityMatrix& sigma, double rel_tol = 1e-8);

// Same value through the one-sided representation over (0, inf); an
// independent evaluator used as a cross-check oracle.
DivergenceValue d_f_single_integral(const ConvexFunction& f,
                                    const DensityMatrix& rho,
                                    const DensityMatrix& sigma,
                                    double rel_tol = 1e-8);

// Third evaluator, routed through deGroot statistical information with the
// substitution u = (1-p)/p taming the p -> 0 endpoint.
DivergenceValue d_f_degroot(const ConvexFunction& f, const DensityMatrix& rho,
                            const DensityMatrix& sigma, double rel_tol = 1e-8);

// Tr rho (ln rho - ln sigma) on supports; +inf iff supp(rho) leaves
// supp(sigma).
double umegaki(const DensityMatrix& rho, const DensityMatrix& sigma);

// chi^2 in sigma's eigenbasis: sum_ij |<i|rho|j>|^2 c_ij - 1 with c_ij the
// reciprocal logarithmic mean of eigenvalue pairs; +inf on support violation.
double chi2_closed(const DensityMatrix& rho, const DensityMatrix& sigma);

// Extrapolates (2/lambda^2) D_f(lambda rho + (1-lambda) sigma || sigma) to
// lambda = 0; converges to fpp_at_1 * chi2_closed. Requires mutual support
// containment and fpp_at_1 in (0, inf).
double local_chi2_limit(const ConvexFunction& f, const DensityMatrix& rho,
                        const DensityMatrix& sigma,
                        const std::vector<double>& lambdas = {0.1, 0.05, 0.025,
                                                              0.0125});

// (1-mu) D_f(rho||mix) + mu D_f(sigma||mix) with mix = lambda rho +
// (1-lambda) sigma; equals D_{skew(f,lambda,mu)}(rho||sigma).
DivergenceValue skew_divergence(const ConvexFunction& f, double lambda,
                                double mu, const DensityMatrix& rho,
                                const DensityMatrix& sigma,
                                double rel_tol = 1e-8);

// f(x) - x f'(x) at x = exp(-d_max(sigma||rho)) plus f'(x) at
// x = exp(d_max(rho||sigma)), with the analytic limits when a d_max is
// infinite. Always >= D_f(rho||sigma).
double d_f_upper_bound(const ConvexFunction& f, const DensityMatrix& rho,
                       const DensityMatrix& sigma);

// Classical oracle: sum_x Q(x) f(P(x)/Q(x)) with 0 f(0/0) = 0 and
// Q(x) = 0 < P(x) contributing P(x) * f'(inf).
double classical_f_div(const std::vector<double>& p,
                       const std::vector<double>& q, const ConvexFunction& f);

// Generalized divergence for PSD operators of positive trace:
// Tr(A-B) + the Ẽ_gamma integral; reduces to d_f_integral at unit traces.
DivergenceValue d_f_generalized(const ConvexFunction& f,
                                const HermitianOperator& a,
                                const HermitianOperator& b,
                                double rel_tol = 1e-8);

}  // namespace qfdiv
