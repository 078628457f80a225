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

#ifndef QFDIV_LINALG_HPP
#define QFDIV_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace qfdiv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Asymmetry beyond this (relative to the largest entry) rejects construction.
inline constexpr double kHermTol = 1e-12;
// Eigenvalues <= kSupportRelTol * lambda_max count as zero for support decisions.
inline constexpr double kSupportRelTol = 1e-12;

// Dense Hermitian operator. The stored matrix is exactly (M + M^dag)/2 so
// downstream self-adjoint eigensolvers see a bitwise-Hermitian input.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& m);
  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

// Eigenvalues ascending; eigenvectors as matching columns with a
// deterministic phase (largest-magnitude component real positive).
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

Spectrum eigh(const HermitianOperator& h);
// Trusted path: `m` must already be exactly Hermitian (e.g. built internally).
Spectrum eigh(const Matrix& m);

// Eigenvalues only; same trust contract as eigh(Matrix).
RealVector eigvalsh(const Matrix& m);

double positive_part_trace(const HermitianOperator& h);
double positive_part_trace(const Matrix& m);

double trace_norm(const HermitianOperator& h);
double trace_norm(const Matrix& m);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
Matrix tensor(const Matrix& a, const Matrix& b);

// Projector onto the span of eigenvectors with lambda > tol * lambda_max.
Matrix support_projector(const Matrix& psd, double tol = kSupportRelTol);

// Spectral functions of PSD operators, applied on the support only (zero
// eigenvalues map to zero; negative powers use the generalized inverse).
// An eigenvalue below -tol * lambda_max raises a support violation.
Matrix matrix_log(const Matrix& psd);
Matrix matrix_power(const Matrix& psd, double t);
Matrix pseudo_inverse_sqrt(const Matrix& psd);

// True when tr((1 - P_b) a) is negligible, i.e. supp(a) is inside supp(b).
bool support_contained(const Matrix& a_psd, const Matrix& b_psd);
// True when the supports are orthogonal (tr(P_a P_b) negligible).
bool support_orthogonal(const Matrix& a_psd, const Matrix& b_psd);

namespace detail {
// Verifies min eigenvalue >= -tol * max(1, |lambda|_max); throws otherwise.
void require_psd(const Matrix& m, const char* what);
}  // namespace detail

}  // namespace qfdiv

#endif  // QFDIV_LINALG_HPP
