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

#include "qfdiv/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>

namespace qfdiv {

HermitianOperator::HermitianOperator(const Matrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw std::invalid_argument("HermitianOperator: matrix must be square, dim >= 1");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermTol * scale) {
    std::ostringstream os;
    os << "HermitianOperator: asymmetry " << asym << " exceeds tolerance "
       << kHermTol * scale;
    throw std::invalid_argument(os.str());
  }
  mat_ = 0.5 * (m + m.adjoint().eval());
}

namespace {

// Rotates each column so its largest-magnitude component is real positive;
// ties break toward the lowest row index so the result is bit-stable.
void fix_phases(Matrix& vecs) {
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vecs.rows(); ++r) {
      const double a = std::abs(vecs(r, c));
      if (a > best) {
        best = a;
        imax = r;
      }
    }
    if (best > 0.0) {
      const Complex z = vecs(imax, c);
      vecs.col(c) *= std::conj(z) / std::abs(z);
    }
  }
}

}  // namespace

Spectrum eigh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigh: eigensolver failed to converge (dim " << m.rows()
       << ", max |entry| " << m.cwiseAbs().maxCoeff() << ")";
    throw std::runtime_error(os.str());
  }
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  fix_phases(s.eigenvectors);
  return s;
}

Spectrum eigh(const HermitianOperator& h) { return eigh(h.mat()); }

RealVector eigvalsh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigvalsh: eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

double positive_part_trace(const Matrix& m) {
  const RealVector w = eigvalsh(m);
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) s += w[i];
  }
  return s;
}

double positive_part_trace(const HermitianOperator& h) {
  return positive_part_trace(h.mat());
}

double trace_norm(const Matrix& m) {
  const RealVector w = eigvalsh(m);
  return w.cwiseAbs().sum();
}

double trace_norm(const HermitianOperator& h) { return trace_norm(h.mat()); }

Matrix tensor(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  return HermitianOperator(tensor(a.mat(), b.mat()));
}

Matrix support_projector(const Matrix& psd, double tol) {
  const Spectrum s = eigh(psd);
  const double lmax = s.eigenvalues.size() ? s.eigenvalues.maxCoeff() : 0.0;
  Matrix p = Matrix::Zero(psd.rows(), psd.cols());
  if (lmax <= 0.0) return p;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues[i] > tol * lmax) {
      p.noalias() += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
    }
  }
  return p;
}

namespace detail {

void require_psd(const Matrix& m, const char* what) {
  const RealVector w = eigvalsh(m);
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if (w.minCoeff() < -1e-9 * scale) {
    std::ostringstream os;
    os << what << ": PSD violation, eigenvalue " << w.minCoeff();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace detail

namespace {

// Applies fn on eigenvalues above the support cut; below-cut map to zero.
// Negative eigenvalues beyond the cut raise a support violation.
template <typename Fn>
Matrix spectral_apply(const Matrix& psd, Fn fn, const char* what) {
  const Spectrum s = eigh(psd);
  const double lmax = std::max(0.0, s.eigenvalues.maxCoeff());
  const double cut = kSupportRelTol * std::max(lmax, 1e-300);
  RealVector mapped(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double l = s.eigenvalues[i];
    if (l > cut) {
      mapped[i] = fn(l);
    } else if (l >= -cut) {
      mapped[i] = 0.0;
    } else {
      std::ostringstream os;
      os << what << ": support violation, eigenvalue " << l
         << " below -" << cut;
      throw std::domain_error(os.str());
    }
  }
  return (s.eigenvectors * mapped.asDiagonal() * s.eigenvectors.adjoint()).eval();
}

}  // namespace

Matrix matrix_log(const Matrix& psd) {
  return spectral_apply(psd, [](double l) { return std::log(l); }, "matrix_log");
}

Matrix matrix_power(const Matrix& psd, double t) {
  return spectral_apply(psd, [t](double l) { return std::pow(l, t); },
                        "matrix_power");
}

Matrix pseudo_inverse_sqrt(const Matrix& psd) {
  return spectral_apply(psd, [](double l) { return 1.0 / std::sqrt(l); },
                        "pseudo_inverse_sqrt");
}

bool support_contained(const Matrix& a_psd, const Matrix& b_psd) {
  const Matrix pb = support_projector(b_psd);
  const Matrix q = Matrix::Identity(pb.rows(), pb.cols()) - pb;
  const double leak = (q * a_psd * q).trace().real();
  const double scale = std::max(1e-300, std::abs(a_psd.trace().real()));
  return leak <= 1e-10 * std::max(1.0, scale);
}

bool support_orthogonal(const Matrix& a_psd, const Matrix& b_psd) {
  const Matrix pa = support_projector(a_psd);
  const Matrix pb = support_projector(b_psd);
  return (pa * pb).trace().real() <= 1e-10;
}

}  // namespace qfdiv
