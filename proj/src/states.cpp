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

#include "qfdiv/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qfdiv {

DensityMatrix validate_density(const HermitianOperator& m) {
  const Spectrum s = eigh(m);
  const double lmin = s.eigenvalues.minCoeff();
  if (lmin < -1e-10) {
    std::ostringstream os;
    os << "validate_density: negative eigenvalue " << lmin;
    throw std::invalid_argument(os.str());
  }
  const double tr = s.eigenvalues.sum();
  if (std::abs(tr - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "validate_density: trace " << tr << " deviates from 1";
    throw std::invalid_argument(os.str());
  }
  // Clamp the tolerated negative dust and renormalize.
  RealVector w = s.eigenvalues.cwiseMax(0.0);
  w /= w.sum();
  Matrix out = s.eigenvectors * w.asDiagonal() * s.eigenvectors.adjoint();
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix::trusted(out);
}

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus list");
  const Eigen::Index din = kraus_.front().cols();
  const Eigen::Index dout = kraus_.front().rows();
  Matrix sum = Matrix::Zero(din, din);
  for (const Matrix& k : kraus_) {
    if (k.cols() != din || k.rows() != dout) {
      throw std::invalid_argument("QuantumChannel: inconsistent Kraus shapes");
    }
    sum.noalias() += k.adjoint() * k;
  }
  const double dev = (sum - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
  if (dev > 1e-9) {
    std::ostringstream os;
    os << "QuantumChannel: Kraus completeness deviation " << dev;
    throw std::invalid_argument(os.str());
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // Box-Muller; u1 shifted into (0, 1] so the log is finite.
  const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.cnormal();
  }
  return g;
}

}  // namespace

DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  if (rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density: rank out of range");
  }
  Rng rng(seed);
  const Matrix g = ginibre(dim, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint().eval());
  return DensityMatrix::trusted(m);
}

Eigen::VectorXcd random_pure(Eigen::Index dim, Rng& rng) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.cnormal();
  v.normalize();
  return v;
}

DensityMatrix pure_density(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd u = v.normalized();
  return DensityMatrix::trusted((u * u.adjoint()).eval());
}

QuantumChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out,
                              Eigen::Index env_dim, std::uint64_t seed) {
  if (env_dim < 1) throw std::invalid_argument("random_channel: env_dim >= 1");
  if (dim_out * env_dim < dim_in) {
    throw std::invalid_argument("random_channel: dilation space smaller than input");
  }
  Rng rng(seed);
  const Eigen::Index big = dim_out * env_dim;
  Matrix g = ginibre(big, dim_in, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(big, dim_in);
  Matrix r = qr.matrixQR().topRows(dim_in).triangularView<Eigen::Upper>();
  // Fix the QR gauge so the isometry is Haar distributed.
  for (Eigen::Index j = 0; j < dim_in; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= std::conj(d) / std::abs(d);
  }
  // Row (i, e) of the isometry, grouped by environment index e.
  std::vector<Matrix> kraus(env_dim, Matrix::Zero(dim_out, dim_in));
  for (Eigen::Index i = 0; i < dim_out; ++i) {
    for (Eigen::Index e = 0; e < env_dim; ++e) {
      for (Eigen::Index j = 0; j < dim_in; ++j) {
        kraus[static_cast<size_t>(e)](i, j) = q(i * env_dim + e, j);
      }
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel depolarizing(double p, const DensityMatrix& sigma) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p in [0,1]");
  const Eigen::Index d = sigma.dim();
  std::vector<Matrix> kraus;
  if (p < 1.0) {
    kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(d, d));
  }
  if (p > 0.0) {
    const Spectrum s = eigh(sigma.mat());
    for (Eigen::Index k = 0; k < d; ++k) {
      const double lk = std::max(0.0, s.eigenvalues[k]);
      if (lk <= 0.0) continue;
      for (Eigen::Index l = 0; l < d; ++l) {
        Matrix kr = Matrix::Zero(d, d);
        kr.col(l) = std::sqrt(p * lk) * s.eigenvectors.col(k);
        kraus.push_back(std::move(kr));
      }
    }
  }
  return QuantumChannel(std::move(kraus));
}

Matrix apply_channel_op(const QuantumChannel& ch, const Matrix& x) {
  Matrix out = Matrix::Zero(ch.dim_out(), ch.dim_out());
  for (const Matrix& k : ch.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho) {
  Matrix out = apply_channel_op(ch, rho.mat());
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix::trusted(out);
}

QuantumChannel tensor_with_identity(const QuantumChannel& ch, Eigen::Index ref_dim) {
  const Matrix id = Matrix::Identity(ref_dim, ref_dim);
  std::vector<Matrix> kraus;
  kraus.reserve(ch.kraus().size());
  for (const Matrix& k : ch.kraus()) kraus.push_back(tensor(k, id));
  return QuantumChannel(std::move(kraus));
}

DensityMatrix tensor_power(const DensityMatrix& rho, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power: n >= 1");
  double logdim = n * std::log2(static_cast<double>(rho.dim()));
  if (logdim > std::log2(static_cast<double>(kDimGuard)) + 1e-9) {
    std::ostringstream os;
    os << "tensor_power: dimension " << rho.dim() << "^" << n
       << " exceeds the guard " << kDimGuard;
    throw std::length_error(os.str());
  }
  Matrix acc = rho.mat();
  for (int i = 1; i < n; ++i) acc = tensor(acc, rho.mat());
  return DensityMatrix::trusted(acc);
}

DensityMatrix cq_embed(const CQState& cq) {
  if (cq.probs.empty() || cq.probs.size() != cq.conditionals.size()) {
    throw std::invalid_argument("cq_embed: probs/conditionals mismatch");
  }
  double psum = 0.0;
  for (double p : cq.probs) {
    if (p < 0.0) throw std::invalid_argument("cq_embed: negative probability");
    psum += p;
  }
  if (std::abs(psum - 1.0) > 1e-10) {
    throw std::invalid_argument("cq_embed: probabilities do not sum to 1");
  }
  const Eigen::Index da = cq.conditionals.front().dim();
  const Eigen::Index nu = static_cast<Eigen::Index>(cq.probs.size());
  Matrix out = Matrix::Zero(nu * da, nu * da);
  for (Eigen::Index u = 0; u < nu; ++u) {
    if (cq.conditionals[static_cast<size_t>(u)].dim() != da) {
      throw std::invalid_argument("cq_embed: conditional dimension mismatch");
    }
    out.block(u * da, u * da, da, da) =
        cq.probs[static_cast<size_t>(u)] * cq.conditionals[static_cast<size_t>(u)].mat();
  }
  return DensityMatrix::trusted(out);
}

DensityMatrix maximally_mixed(Eigen::Index dim) {
  return DensityMatrix::trusted(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace qfdiv
