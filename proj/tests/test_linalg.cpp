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

#include <algorithm>
#include <cmath>
#include <vector>

#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"

using namespace qfdiv;

namespace {

Matrix random_hermitian(Eigen::Index d, Rng& rng) {
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.cnormal();
  return 0.5 * (g + g.adjoint().eval());
}

}  // namespace

TEST_CASE("eigh on diagonal and Pauli-X inputs") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.1;
  d(1, 1) = 0.9;
  Spectrum s = eigh(HermitianOperator(d));
  CHECK(s.eigenvalues[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.9).epsilon(1e-12));
  // Phase convention: largest component real positive, so columns are e0, e1.
  CHECK(std::abs(s.eigenvectors(0, 0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(s.eigenvectors(1, 1) - Complex(1, 0)) < 1e-12);

  Matrix x(2, 2);
  x << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  Spectrum sx = eigh(HermitianOperator(x));
  CHECK(sx.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(sx.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("eigh rejects non-hermitian input") {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0, 0);
  CHECK_THROWS_AS(HermitianOperator{m}, std::invalid_argument);
}

TEST_CASE("qutrit example state has unit-trace nonnegative spectrum") {
  Matrix r(3, 3);
  r << 5, 4, 2, 4, 5, 2, 2, 2, 2;
  r /= 12.0;
  Spectrum s = eigh(HermitianOperator(r));
  CHECK(s.eigenvalues.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.eigenvalues.minCoeff() >= -1e-12);
}

TEST_CASE("positive_part_trace basics") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.4;
  d(1, 1) = -0.4;
  CHECK(positive_part_trace(HermitianOperator(d)) == doctest::Approx(0.4));
  CHECK(trace_norm(HermitianOperator(d)) == doctest::Approx(0.8));

  // rho - 1.5 sigma for the commuting qubit pair.
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.9 - 1.5 * 0.5;
  m(1, 1) = 0.1 - 1.5 * 0.5;
  CHECK(positive_part_trace(HermitianOperator(m)) == doctest::Approx(0.15));
}

TEST_CASE("unit-trace PSD state has positive part trace 1") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    DensityMatrix rho = random_density(3, 3, seed);
    CHECK(positive_part_trace(rho.mat()) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("spectral identities on random hermitian matrices") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 2 + trial % 15;
    Matrix h = random_hermitian(d, rng);
    const double tr = h.trace().real();
    CHECK(positive_part_trace(h) - positive_part_trace((-h).eval()) ==
          doctest::Approx(tr).epsilon(1e-9));
    CHECK(trace_norm(h) ==
          doctest::Approx(positive_part_trace(h) + positive_part_trace((-h).eval()))
              .epsilon(1e-9));
  }
}

TEST_CASE("eigh reconstruction and unitarity over many seeds") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index d = 2 + trial % 7;
    Matrix h = random_hermitian(d, rng);
    Spectrum s = eigh(h);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    Matrix rec = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
    REQUIRE((rec - h).cwiseAbs().maxCoeff() < 1e-10 * scale);
    Matrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
    REQUIRE((gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE(std::is_sorted(s.eigenvalues.data(), s.eigenvalues.data() + d));
  }
}

TEST_CASE("eigh is deterministic for identical input bits") {
  Rng rng(11);
  Matrix h = random_hermitian(4, rng);
  Spectrum s1 = eigh(h);
  Spectrum s2 = eigh(h);
  CHECK((s1.eigenvectors - s2.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
  CHECK((s1.eigenvalues - s2.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor product dims and spectrum") {
  Matrix i2 = Matrix::Identity(2, 2);
  CHECK((tensor(i2, i2) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index da = 2 + trial % 3, db = 2 + (trial / 3) % 3;
    Matrix a = random_hermitian(da, rng);
    Matrix b = random_hermitian(db, rng);
    RealVector wa = eigvalsh(a), wb = eigvalsh(b);
    std::vector<double> outer;
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < db; ++j) outer.push_back(wa[i] * wb[j]);
    std::sort(outer.begin(), outer.end());
    RealVector wt = eigvalsh(tensor(a, b));
    for (Eigen::Index k = 0; k < wt.size(); ++k) {
      REQUIRE(wt[k] == doctest::Approx(outer[static_cast<size_t>(k)]).epsilon(1e-9));
    }
  }
}

TEST_CASE("matrix functions respect the support convention") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = std::exp(1.0);
  d(1, 1) = 1.0;
  Matrix lg = matrix_log(d);
  CHECK(lg(0, 0).real() == doctest::Approx(1.0));
  CHECK(lg(1, 1).real() == doctest::Approx(0.0));

  // Rank-deficient PSD input: zero eigenvalue maps to zero, also for
  // negative powers (generalized inverse).
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 4.0;
  Matrix inv_sqrt = pseudo_inverse_sqrt(p);
  CHECK(inv_sqrt(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(inv_sqrt(1, 1)) == 0.0);
  Matrix pw = matrix_power(p, -1.0);
  CHECK(pw(0, 0).real() == doctest::Approx(0.25));
  CHECK(std::abs(pw(1, 1)) == 0.0);

  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(matrix_power(neg, -1.0), std::domain_error);
  CHECK_THROWS_AS(matrix_log(neg), std::domain_error);
}

TEST_CASE("support projector is idempotent and detects containment") {
  Rng rng(9);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityMatrix low = random_density(4, 2, seed + 100);
    Matrix p = support_projector(low.mat());
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(p.trace().real() == doctest::Approx(2.0).epsilon(1e-8));

    DensityMatrix full = random_density(4, 4, seed + 200);
    CHECK(support_contained(low.mat(), full.mat()));
    CHECK(!support_contained(full.mat(), low.mat()));
  }

  Matrix e0 = Matrix::Zero(2, 2), e1 = Matrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  CHECK(support_orthogonal(e0, e1));
  CHECK(!support_orthogonal(e0, e0));
}
