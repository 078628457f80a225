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
#include <vector>

#include "qfdiv/hockey.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"
#include "reference_values.hpp"

using namespace qfdiv;

namespace {

DensityMatrix diag_state(std::initializer_list<double> entries) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(entries.size()),
                          static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double v : entries) m(i, i) = v, ++i;
  return validate_density(HermitianOperator(m));
}

const DensityMatrix kRho = diag_state({0.9, 0.1});
const DensityMatrix kSigma = diag_state({0.5, 0.5});

}  // namespace

TEST_CASE("frozen diagonal values") {
  CHECK(e_gamma(kRho, kSigma, 1.0) ==
        doctest::Approx(qfdiv_ref::kDiagE1).epsilon(1e-12));
  CHECK(e_gamma(kRho, kSigma, 1.5) ==
        doctest::Approx(qfdiv_ref::kDiagE15).epsilon(1e-12));
  CHECK(trace_distance(kRho, kSigma) ==
        doctest::Approx(qfdiv_ref::kDiagE1).epsilon(1e-12));
  CHECK(d_max(kRho, kSigma) ==
        doctest::Approx(qfdiv_ref::kDiagDmaxRS).epsilon(1e-12));
  CHECK(d_max(kSigma, kRho) ==
        doctest::Approx(qfdiv_ref::kDiagDmaxSR).epsilon(1e-12));
  CHECK(hilbert_omega(kRho, kSigma) ==
        doctest::Approx(qfdiv_ref::kDiagOmega).epsilon(1e-12));
  CHECK(thompson(kRho, kSigma) ==
        doctest::Approx(std::max(qfdiv_ref::kDiagDmaxRS, qfdiv_ref::kDiagDmaxSR))
            .epsilon(1e-12));
  CHECK(degroot_info(0.5, kRho, kSigma) ==
        doctest::Approx(qfdiv_ref::kDiagInfoHalf).epsilon(1e-12));
}

TEST_CASE("gamma validation") {
  CHECK_THROWS_AS(e_gamma(kRho, kSigma, -0.5), std::invalid_argument);
  Matrix notpsd = Matrix::Zero(2, 2);
  notpsd(0, 0) = 1.0;
  notpsd(1, 1) = -0.2;
  CHECK_THROWS_AS(e_gamma(HermitianOperator(notpsd), HermitianOperator(notpsd), 1.0),
                  std::invalid_argument);
}

TEST_CASE("monotone non-increasing and convex in gamma") {
  std::vector<double> gammas;
  for (int i = 0; i <= 40; ++i) gammas.push_back(1.0 + 0.15 * i);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    DensityMatrix rho = random_density(3, 3, seed);
    DensityMatrix sigma = random_density(3, 3, seed + 1000);
    std::vector<double> vals;
    for (double g : gammas) vals.push_back(e_gamma(rho, sigma, g));
    for (size_t i = 0; i + 1 < vals.size(); ++i) {
      REQUIRE(vals[i + 1] <= vals[i] + 1e-12);
    }
    // Midpoint convexity on the uniform grid.
    for (size_t i = 0; i + 2 < vals.size(); ++i) {
      REQUIRE(vals[i + 1] <= 0.5 * (vals[i] + vals[i + 2]) + 1e-12);
    }
  }
}

TEST_CASE("exchange identity on unequal-trace PSD operators") {
  Rng rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    Matrix ga(3, 3), gb(3, 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) {
        ga(i, j) = rng.cnormal();
        gb(i, j) = rng.cnormal();
      }
    }
    HermitianOperator a((ga * ga.adjoint()).eval());
    HermitianOperator b((gb * gb.adjoint()).eval());
    const double gamma = 0.3 + 2.5 * rng.uniform();
    const double lhs = e_gamma(a, b, gamma);
    const double rhs = gamma * e_gamma(b, a, 1.0 / gamma);
    REQUIRE(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("data processing inequality") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    DensityMatrix rho = random_density(3, 2 + seed % 2, seed);
    DensityMatrix sigma = random_density(3, 3, seed + 500);
    QuantumChannel ch = random_channel(3, 2 + seed % 2, 2, seed + 900);
    for (double g : {1.0, 1.3, 2.0, 5.0}) {
      const double before = e_gamma(rho, sigma, g);
      const double after = e_gamma(apply_channel(ch, rho), apply_channel(ch, sigma), g);
      REQUIRE(after <= before + 1e-11);
    }
  }
}

TEST_CASE("triangle inequality across an intermediate state") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    DensityMatrix rho = random_density(3, 3, seed);
    DensityMatrix tau = random_density(3, 3, seed + 111);
    DensityMatrix sigma = random_density(3, 3, seed + 222);
    for (double g1 : {1.0, 1.4, 2.2}) {
      for (double g2 : {1.0, 1.7}) {
        const double lhs = e_gamma(rho, sigma, g1 * g2);
        const double rhs = e_gamma(rho, tau, g1) + g1 * e_gamma(tau, sigma, g2);
        REQUIRE(lhs <= rhs + 1e-11);
      }
    }
  }
}

TEST_CASE("stability under appending an uncorrelated PSD factor") {
  Rng rng(7);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityMatrix rho = random_density(2, 2, seed);
    DensityMatrix sigma = random_density(2, 2, seed + 77);
    Matrix gc(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) gc(i, j) = rng.cnormal();
    Matrix c = gc * gc.adjoint();
    const double tc = c.trace().real();
    for (double g : {1.0, 1.9}) {
      HermitianOperator a(tensor(rho.mat(), c));
      HermitianOperator b(tensor(sigma.mat(), c));
      const double lhs = e_gamma(a, b, g);
      REQUIRE(lhs == doctest::Approx(tc * e_gamma(rho, sigma, g)).epsilon(1e-10));
    }
  }
}

TEST_CASE("subadditivity under tensor products, both orderings") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityMatrix r1 = random_density(2, 2, seed);
    DensityMatrix s1 = random_density(2, 2, seed + 31);
    DensityMatrix r2 = random_density(2, 2, seed + 62);
    DensityMatrix s2 = random_density(2, 2, seed + 93);
    HermitianOperator rr(tensor(r1.mat(), r2.mat()));
    HermitianOperator ss(tensor(s1.mat(), s2.mat()));
    for (double g1 : {1.0, 1.5, 2.5}) {
      for (double g2 : {1.0, 1.5, 2.5}) {
        const double joint = e_gamma(rr, ss, g1 * g2);
        const double split_a = e_gamma(r1, s1, g1) + g1 * e_gamma(r2, s2, g2);
        const double split_b = e_gamma(r2, s2, g2) + g2 * e_gamma(r1, s1, g1);
        REQUIRE(joint <= split_a + 1e-11);
        REQUIRE(joint <= split_b + 1e-11);
      }
    }
  }
}

TEST_CASE("E_gamma vanishes exactly at gamma = exp(d_max)") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    DensityMatrix rho = random_density(3, 3, seed + 1);
    DensityMatrix sigma = random_density(3, 3, seed + 4000);
    const double gstar = std::exp(d_max(rho, sigma));
    REQUIRE(e_gamma(rho, sigma, gstar * (1.0 + 1e-6)) == 0.0);
    REQUIRE(e_gamma(rho, sigma, gstar * (1.0 - 1e-6)) > 0.0);
  }
}

TEST_CASE("d_max is +inf outside support containment") {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  DensityMatrix pure0 = validate_density(HermitianOperator(p0));
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  DensityMatrix pure1 = validate_density(HermitianOperator(p1));
  CHECK(std::isinf(d_max(pure0, pure1)));
  CHECK(std::isinf(thompson(pure0, pure1)));
  CHECK(std::isinf(hilbert_omega(pure0, pure1)));
  CHECK(d_max(pure0, pure0) == doctest::Approx(0.0));
}

TEST_CASE("direct sum over a classical register decomposes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CQState cq;
    cq.probs = {0.25, 0.35, 0.4};
    Matrix avg = Matrix::Zero(2, 2);
    for (int u = 0; u < 3; ++u) {
      cq.conditionals.push_back(random_density(2, 2, seed * 16 + static_cast<std::uint64_t>(u)));
      avg += cq.probs[static_cast<size_t>(u)] * cq.conditionals[static_cast<size_t>(u)].mat();
    }
    DensityMatrix rho_bar = DensityMatrix::trusted(avg);
    Matrix probs_diag = Matrix::Zero(3, 3);
    for (int u = 0; u < 3; ++u) probs_diag(u, u) = cq.probs[static_cast<size_t>(u)];
    DensityMatrix joint = cq_embed(cq);
    DensityMatrix product = DensityMatrix::trusted(tensor(probs_diag, avg));
    for (double g : {1.0, 1.4, 2.3}) {
      const double whole = e_gamma(joint, product, g);
      double parts = 0.0;
      for (int u = 0; u < 3; ++u) {
        parts += cq.probs[static_cast<size_t>(u)] *
                 e_gamma(cq.conditionals[static_cast<size_t>(u)], rho_bar, g);
      }
      REQUIRE(whole == doctest::Approx(parts).epsilon(1e-10));
    }
  }
}

TEST_CASE("bayes_error and degroot_info branches") {
  // Extremes carry no information.
  CHECK(bayes_error(0.0, kRho, kSigma) == 0.0);
  CHECK(bayes_error(1.0, kRho, kSigma) == 0.0);
  CHECK(degroot_info(0.0, kRho, kSigma) == 0.0);
  CHECK_THROWS_AS(bayes_error(-0.1, kRho, kSigma), std::invalid_argument);
  CHECK_THROWS_AS(bayes_error(1.1, kRho, kSigma), std::invalid_argument);

  // The two branches agree at p = 1/2 and info is symmetric about it there.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensityMatrix rho = random_density(3, 3, seed);
    DensityMatrix sigma = random_density(3, 3, seed + 50);
    // I_{1/2} = (1/4)||rho - sigma||_1 = (1/2) E_1.
    const double ihalf = degroot_info(0.5, rho, sigma);
    REQUIRE(ihalf == doctest::Approx(0.5 * trace_distance(rho, sigma)).epsilon(1e-10));
    for (double p : {0.1, 0.3, 0.45}) {
      // Equal-prior swap symmetry: I_p(rho, sigma) = I_{1-p}(sigma, rho).
      REQUIRE(degroot_info(p, rho, sigma) ==
              doctest::Approx(degroot_info(1.0 - p, sigma, rho)).epsilon(1e-10));
      REQUIRE(degroot_info(p, rho, sigma) >= -1e-12);
      REQUIRE(bayes_error(p, rho, sigma) <= std::min(p, 1.0 - p) + 1e-12);
    }
  }
}
