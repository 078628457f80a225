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

#ifndef QFDIV_STATES_HPP
#define QFDIV_STATES_HPP

#include <cstdint>
#include <vector>

#include "qfdiv/linalg.hpp"

namespace qfdiv {

// Tensor powers refuse to build operators larger than this.
inline constexpr Eigen::Index kDimGuard = 4096;

// Unit-trace PSD operator. Validation clamps eigenvalues in [-1e-10, 0)
// to zero and renormalizes the trace within its 1e-10 tolerance.
class DensityMatrix {
 public:
  const Matrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  friend DensityMatrix validate_density(const HermitianOperator& m);
  // Trusted constructor for matrices that are PSD and unit trace by
  // construction (mixtures, channel outputs, tensor products).
  static DensityMatrix trusted(const Matrix& m) { return DensityMatrix(m); }

 private:
  explicit DensityMatrix(const Matrix& m) : mat_(m) {}
  Matrix mat_;
};

DensityMatrix validate_density(const HermitianOperator& m);

// Kraus representation; completeness sum K^dag K = 1 is checked on
// construction within 1e-9.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<Matrix> kraus);
  const std::vector<Matrix>& kraus() const { return kraus_; }
  Eigen::Index dim_in() const { return kraus_.front().cols(); }
  Eigen::Index dim_out() const { return kraus_.front().rows(); }

 private:
  std::vector<Matrix> kraus_;
};

struct CQState {
  std::vector<double> probs;
  std::vector<DensityMatrix> conditionals;
};

// Deterministic portable RNG: xoshiro256++ seeded via SplitMix64; uniforms
// from the top 53 bits, normals via Box-Muller. Identical streams on every
// platform, unlike std::normal_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  Complex cnormal(); // independent N(0,1) real and imaginary parts

 private:
  std::uint64_t next();
  std::uint64_t state_[4];
};

DensityMatrix random_density(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);
// Haar pure state as a column vector.
Eigen::VectorXcd random_pure(Eigen::Index dim, Rng& rng);
DensityMatrix pure_density(const Eigen::VectorXcd& v);

// Stinespring dilation of a seeded Haar-random isometry into out x env,
// Kraus operators read off by environment index.
QuantumChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out,
                              Eigen::Index env_dim, std::uint64_t seed);

// (1-p) rho + p sigma.
QuantumChannel depolarizing(double p, const DensityMatrix& sigma);

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho);
// Linear action on arbitrary operators (PSD inputs stay PSD).
Matrix apply_channel_op(const QuantumChannel& ch, const Matrix& x);
// Kraus set {K tensor I_ref}.
QuantumChannel tensor_with_identity(const QuantumChannel& ch, Eigen::Index ref_dim);

DensityMatrix tensor_power(const DensityMatrix& rho, int n);
DensityMatrix cq_embed(const CQState& cq);
DensityMatrix maximally_mixed(Eigen::Index dim);

}  // namespace qfdiv

#endif  // QFDIV_STATES_HPP
