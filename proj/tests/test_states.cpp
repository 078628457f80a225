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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"

using namespace qfdiv;

namespace {

// Partial trace over the A system of a block-embedded cq state; test-only.
Matrix partial_trace_classical(const Matrix& m, Eigen::Index nu, Eigen::Index da) {
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index u = 0; u < nu; ++u) out += m.block(u * da, u * da, da, da);
  return out;
}

DensityMatrix diag_state(std::initializer_list<double> entries) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(entries.size()),
                          static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double v : entries) m(i, i) = v, ++i;
  return validate_density(HermitianOperator(m));
}

}  // namespace

TEST_CASE("validate_density accepts states and rejects violations") {
  CHECK_NOTHROW(diag_state({0.5, 0.5}));
  CHECK_NOTHROW(diag_state({0.625, 0.25, 0.125}));

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  CHECK_THROWS_WITH_AS(validate_density(HermitianOperator(bad)),
                       doctest::Contains("negative eigenvalue"),
                       std::invalid_argument);

  Matrix off = Matrix::Zero(2, 2);
  off(0, 0) = 0.6;
  off(1, 1) = 0.6;
  CHECK_THROWS_WITH_AS(validate_density(HermitianOperator(off)),
                       doctest::Contains("trace"), std::invalid_argument);
}

TEST_CASE("random_density: rank, purity, determinism") {
  DensityMatrix full = random_density(2, 2, 1);
  CHECK(full.mat().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigvalsh(full.mat()).minCoeff() > 0.0);

  DensityMatrix pure = random_density(4, 1, 7);
  const double purity = (pure.mat() * pure.mat()).trace().real();
  CHECK(purity == doctest::Approx(1.0).epsilon(1e-10));

  DensityMatrix a = random_density(3, 2, 123), b = random_density(3, 2, 123);
  CHECK((a.mat() - b.mat()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(random_density(2, 3, 0), std::invalid_argument);
}

TEST_CASE("random_channel: unitary case and completeness") {
  QuantumChannel u = random_channel(2, 2, 1, 9);
  CHECK(u.kraus().size() == 1);
  Matrix k = u.kraus().front();
  CHECK((k.adjoint() * k - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);

  QuantumChannel ch = random_channel(2, 2, 4, 3);
  CHECK(ch.kraus().size() == 4);
  DensityMatrix out = apply_channel(ch, maximally_mixed(2));
  CHECK(out.mat().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("apply_channel preserves trace and positivity") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Eigen::Index din = 2 + seed % 3, dout = 2 + (seed / 3) % 3;
    QuantumChannel ch = random_channel(din, dout, 1 + seed % 3, seed);
    DensityMatrix rho = random_density(din, 1 + seed % din, seed + 5000);
    DensityMatrix out = apply_channel(ch, rho);
    REQUIRE(out.mat().trace().real() == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(eigvalsh(out.mat()).minCoeff() > -1e-10);
  }
}

TEST_CASE("depolarizing matches the affine formula") {
  DensityMatrix tau = maximally_mixed(2);
  Matrix e0 = Matrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  DensityMatrix ket0 = validate_density(HermitianOperator(e0));

  DensityMatrix out = apply_channel(depolarizing(0.25, tau), ket0);
  CHECK(out.mat()(0, 0).real() == doctest::Approx(0.875).epsilon(1e-12));
  CHECK(out.mat()(1, 1).real() == doctest::Approx(0.125).epsilon(1e-12));

  // p = 0 acts as the identity; p = 1 is the constant-sigma channel.
  DensityMatrix id_out = apply_channel(depolarizing(0.0, tau), ket0);
  CHECK((id_out.mat() - ket0.mat()).cwiseAbs().maxCoeff() < 1e-12);
  DensityMatrix const_out = apply_channel(depolarizing(1.0, tau), ket0);
  CHECK((const_out.mat() - tau.mat()).cwiseAbs().maxCoeff() < 1e-12);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double p = (seed % 11) / 10.0;
    DensityMatrix sigma = random_density(3, 3, seed + 400);
    DensityMatrix rho = random_density(3, 2 + seed % 2, seed + 700);
    DensityMatrix got = apply_channel(depolarizing(p, sigma), rho);
    Matrix want = (1.0 - p) * rho.mat() + p * sigma.mat();
    REQUIRE((got.mat() - want).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("depolarizing fixed point") {
  DensityMatrix tau = maximally_mixed(2);
  DensityMatrix out = apply_channel(depolarizing(0.3, tau), tau);
  CHECK((out.mat() - tau.mat()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("tensor_power values and guard") {
  DensityMatrix rho = diag_state({0.9, 0.1});
  DensityMatrix r2 = tensor_power(rho, 2);
  CHECK(r2.mat()(0, 0).real() == doctest::Approx(0.81));
  CHECK(r2.mat()(1, 1).real() == doctest::Approx(0.09));
  CHECK(r2.mat()(2, 2).real() == doctest::Approx(0.09));
  CHECK(r2.mat()(3, 3).real() == doctest::Approx(0.01));

  CHECK_THROWS_AS(tensor_power(rho, 13), std::length_error);
  CHECK_NOTHROW(tensor_power(rho, 12));
}

TEST_CASE("cq_embed is block diagonal and partial-traces back") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CQState cq;
    cq.probs = {0.5, 0.3, 0.2};
    for (int u = 0; u < 3; ++u) {
      cq.conditionals.push_back(random_density(2, 2, seed * 10 + static_cast<std::uint64_t>(u)));
    }
    DensityMatrix emb = cq_embed(cq);
    REQUIRE(emb.dim() == 6);
    REQUIRE(emb.mat().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
    // Off-diagonal blocks vanish.
    REQUIRE(emb.mat().block(0, 2, 2, 2).cwiseAbs().maxCoeff() == 0.0);

    Matrix avg = partial_trace_classical(emb.mat(), 3, 2);
    Matrix want = Matrix::Zero(2, 2);
    for (int u = 0; u < 3; ++u) {
      want += cq.probs[static_cast<size_t>(u)] * cq.conditionals[static_cast<size_t>(u)].mat();
    }
    REQUIRE((avg - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}
