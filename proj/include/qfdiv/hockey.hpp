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

#ifndef QFDIV_HOCKEY_HPP
#define QFDIV_HOCKEY_HPP

#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// Hockey-stick divergence of PSD operators:
//   E_gamma(A||B) = Tr(A - gamma B)_+ - (Tr(A - gamma B))_+.
// The subtracted term vanishes for unit-trace states at gamma >= 1, so the
// states-only form falls out of this single code path.
double e_gamma(const HermitianOperator& a, const HermitianOperator& b, double gamma);
double e_gamma(const DensityMatrix& rho, const DensityMatrix& sigma, double gamma);

// Tr(A - gamma B)_+ without the subtraction; the unnormalized variant used
// by the generalized divergence of positive operators.
double e_gamma_tilde(const Matrix& a, const Matrix& b, double gamma);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// ln of the largest eigenvalue of B^{-1/2} A B^{-1/2} on supp(B);
// +infinity when supp(A) is not contained in supp(B).
double d_max(const DensityMatrix& rho, const DensityMatrix& sigma);
double d_max(const Matrix& a_psd, const Matrix& b_psd);

// Thompson metric max{D_max both ways}; Hilbert projective metric (sum).
double thompson(const DensityMatrix& rho, const DensityMatrix& sigma);
double hilbert_omega(const DensityMatrix& rho, const DensityMatrix& sigma);

// Bayes error of prior-p discrimination and the deGroot statistical
// information I_p = min(p, 1-p) - B_p, via the two hockey-stick branches.
double bayes_error(double p, const DensityMatrix& rho, const DensityMatrix& sigma);
double degroot_info(double p, const DensityMatrix& rho, const DensityMatrix& sigma);

namespace detail {
// Trusted fast path: no PSD re-validation, inputs assumed exactly Hermitian.
double e_gamma_raw(const Matrix& a, const Matrix& b, double gamma);
}  // namespace detail

}  // namespace qfdiv

#endif  // QFDIV_HOCKEY_HPP
