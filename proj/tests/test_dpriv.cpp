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
#include <stdexcept>
#include <vector>

#include "qfdiv/convex.hpp"
#include "qfdiv/dpriv.hpp"
#include "qfdiv/fdiv.hpp"
#include "qfdiv/hockey.hpp"
#include "qfdiv/linalg.hpp"
#include "qfdiv/states.hpp"
#include "reference_values.hpp"

using namespace qfdiv;
using namespace qfdiv_ref;

namespace {

DensityMatrix diag_state(std::initializer_list<double> entries) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(entries.size()),
                          static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double v : entries) m(i, i) = v, ++i;
  return validate_density(HermitianOperator(m));
}

const DensityMatrix kZero = diag_state({1.0, 0.0});
const DensityMatrix kOne = diag_state({0.0, 1.0});
const DensityMatrix kMixed = diag_state({0.5, 0.5});

// A(rho) = Tr(rho) tau via Kraus sqrt(lambda_j) |v_j><e_i|.
QuantumChannel constant_channel(const DensityMatrix& tau) {
  const Eigen::Index d = tau.dim();
  const Spectrum s = eigh(tau.mat());
  std::vector<Matrix> ks;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double lj = std::max(0.0, s.eigenvalues[j]);
    if (lj == 0.0) continue;
    for (Eigen::Index i = 0; i < d; ++i) {
      Matrix k = Matrix::Zero(d, d);
      k.col(i) = std::sqrt(lj) * s.eigenvectors.col(j);
      ks.push_back(k);
    }
  }
  return QuantumChannel(std::move(ks));
}

NeighborSet orthogonal_neighbors() { return symmetric_closure({{kZero, kOne}}); }

}  // namespace

TEST_CASE("symmetric closure") {
  CHECK_THROWS_AS(symmetric_closure({}), std::invalid_argument);

  const NeighborSet nb = orthogonal_neighbors();
  REQUIRE(nb.pairs.size() == 2);
  CHECK((nb.pairs[1].first.mat() - kOne.mat()).norm() == 0.0);
  CHECK((nb.pairs[1].second.mat() - kZero.mat()).norm() == 0.0);

  // Already symmetric input is left alone.
  const NeighborSet closed = symmetric_closure(
      {{kZero, kOne}, {kOne, kZero}});
  CHECK(closed.pairs.size() == 2);

  // Self pairs need no mirror.
  const NeighborSet self = symmetric_closure({{kMixed, kMixed}});
  CHECK(self.pairs.size() == 1);

  Matrix q3 = Matrix::Identity(3, 3) / 3.0;
  CHECK_THROWS_AS(
      symmetric_closure(
          {{kZero, validate_density(HermitianOperator(q3))}}),
      std::invalid_argument);
}

TEST_CASE("check_dp validation and basic examples") {
  const NeighborSet nb = orthogonal_neighbors();
  const QuantumChannel id2 = QuantumChannel({Matrix::Identity(2, 2)});

  CHECK_THROWS_AS(check_dp(id2, nb, -0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check_dp(id2, nb, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(check_dp(id2, NeighborSet{}, 1.0, 0.0),
                  std::invalid_argument);
  const NeighborSet nb3 = symmetric_closure(
      {{validate_density(HermitianOperator(Matrix::Identity(3, 3) / 3.0)),
        validate_density(HermitianOperator(Matrix::Identity(3, 3) / 3.0))}});
  CHECK_THROWS_AS(check_dp(id2, nb3, 1.0, 0.0), std::invalid_argument);

  SUBCASE("constant channel is (0,0)-DP") {
    const QuantumChannel cc = constant_channel(kMixed);
    const DpReport rep = check_dp(cc, nb, 0.0, 0.0);
    CHECK(rep.pass);
    CHECK(rep.worst_hockey <= 1e-12);
    REQUIRE(rep.dmax_pass.has_value());
    CHECK(*rep.dmax_pass);
  }

  SUBCASE("identity channel fails every finite eps with delta < 1") {
    for (double eps : {0.0, 1.0, 10.0, 100.0}) {
      const DpReport rep = check_dp(id2, nb, eps, 0.3);
      CAPTURE(eps);
      CHECK_FALSE(rep.pass);
      CHECK(rep.worst_hockey == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(check_dp(id2, nb, 1.0, 1.0).pass);
  }
}

TEST_CASE("depolarizing channel closed-form DP thresholds") {
  const NeighborSet nb = orthogonal_neighbors();

  SUBCASE("hockey value matches the two-outcome closed form") {
    for (double p : {0.25, 0.5, 0.8}) {
      for (double eps : {0.0, std::log(2.0), 1.3}) {
        const QuantumChannel dep = depolarizing(p, kMixed);
        const DpReport rep = check_dp(dep, nb, eps, 1.0);
        const double expected =
            std::max(0.0, (1.0 - p / 2.0) - std::exp(eps) * p / 2.0);
        CAPTURE(p);
        CAPTURE(eps);
        CHECK(rep.worst_hockey == doctest::Approx(expected).epsilon(1e-11));
      }
    }
  }

  SUBCASE("delta boundary at p = 0.25, eps = ln 2 resolves 1e-9 shifts") {
    const QuantumChannel dep = depolarizing(0.25, kMixed);
    CHECK(check_dp(dep, nb, std::log(2.0), kDepolP025DeltaAtLn2).pass);
    CHECK(check_dp(dep, nb, std::log(2.0), kDepolP025DeltaAtLn2 + 1e-9).pass);
    CHECK_FALSE(
        check_dp(dep, nb, std::log(2.0), kDepolP025DeltaAtLn2 - 1e-9).pass);
  }

  SUBCASE("pure-DP threshold at eps* = log((2-p)/p)") {
    const QuantumChannel dep = depolarizing(0.25, kMixed);
    const DpReport at = check_dp(dep, nb, kDepolP025EpsStar, 0.0);
    CHECK(at.pass);
    REQUIRE(at.dmax_pass.has_value());
    CHECK(*at.dmax_pass);
    CHECK(*at.worst_dmax == doctest::Approx(kDepolP025EpsStar).epsilon(1e-11));

    const DpReport below = check_dp(dep, nb, kDepolP025EpsStar - 1e-6, 0.0);
    CHECK_FALSE(below.pass);
    CHECK_FALSE(*below.dmax_pass);
  }
}

TEST_CASE("pure-DP criteria agree on random triples") {
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index d = 2 + (t % 2);
    const QuantumChannel ch = random_channel(d, d, 2, 1300 + 3 * t);
    const NeighborSet nb = symmetric_closure(
        {{random_density(d, d, 1301 + 3 * t), random_density(d, d, 1302 + 3 * t)}});
    Rng rng(7100 + static_cast<std::uint64_t>(t));
    const double eps = 3.0 * rng.uniform();
    const DpReport rep = check_dp(ch, nb, eps, 0.0);
    CAPTURE(t);
    CAPTURE(eps);
    REQUIRE(rep.dmax_pass.has_value());
    CHECK(rep.pass == *rep.dmax_pass);
  }
}

TEST_CASE("phi contraction factor") {
  CHECK(phi(0.0, 0.0) == 0.0);
  CHECK(phi(std::log(2.0), 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(phi(3.7, 1.0) == 1.0);
  CHECK_THROWS_AS(phi(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(phi(1.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(phi(1.0, 1.1), std::invalid_argument);

  const std::vector<double> es = {0.0, 0.3, 1.0, 2.5, 10.0};
  const std::vector<double> ds = {0.0, 0.2, 0.6, 1.0};
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < ds.size(); ++j) {
      const double v = phi(es[i], ds[j]);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      if (i > 0) CHECK(v >= phi(es[i - 1], ds[j]) - 1e-15);
      if (j > 0) CHECK(v >= phi(es[i], ds[j - 1]) - 1e-15);
    }
  }
}

TEST_CASE("ldp divergence bound") {
  SUBCASE("identity channel is rejected with a witness") {
    const QuantumChannel id2 = QuantumChannel({Matrix::Identity(2, 2)});
    CHECK_THROWS_WITH_AS(
        ldp_divergence_bound(make_kl(), id2, kMixed, kZero, 2.0, 0.0),
        doctest::Contains("witness"), std::invalid_argument);
  }

  SUBCASE("depolarizing family at its exact threshold") {
    for (double p : {0.3, 0.6, 0.9}) {
      const double eps = std::log((2.0 - p) / p);
      const QuantumChannel dep = depolarizing(p, kMixed);
      for (int t = 0; t < 6; ++t) {
        const DensityMatrix r = random_density(2, 2, 2200 + 2 * t);
        const DensityMatrix s = random_density(2, 2, 2201 + 2 * t);
        const BoundReport rep =
            ldp_divergence_bound(make_kl(), dep, r, s, eps, 0.0);
        CAPTURE(p);
        CAPTURE(t);
        CHECK(rep.slack >= -1e-9);
        CHECK(rep.lhs >= 0.0);
      }
    }
  }

  SUBCASE("identical inputs give the zero report") {
    const QuantumChannel dep = depolarizing(0.5, kMixed);
    const BoundReport rep = ldp_divergence_bound(make_kl(), dep, kMixed,
                                                 kMixed, std::log(3.0), 0.0);
    CHECK(rep.lhs == 0.0);
    CHECK(rep.rhs == 0.0);
    CHECK(rep.slack == 0.0);
  }

  SUBCASE("delta = 1 admits every channel and phi saturates") {
    const QuantumChannel id2 = QuantumChannel({Matrix::Identity(2, 2)});
    const DensityMatrix r = random_density(2, 2, 31);
    const DensityMatrix s = random_density(2, 2, 32);
    const BoundReport rep =
        ldp_divergence_bound(make_kl(), id2, r, s, 0.7, 1.0);
    // phi(eps, 1) = 1 and the channel is the identity, so both sides are
    // the same divergence evaluation.
    CHECK(rep.slack == 0.0);
  }

  SUBCASE("stein converse rate is phi times the relative entropy") {
    const DensityMatrix r = random_density(2, 2, 41);
    const DensityMatrix s = random_density(2, 2, 42);
    const double rate = stein_converse_rate(r, s, 1.0, 0.2);
    CHECK(rate ==
          doctest::Approx(phi(1.0, 0.2) * umegaki(r, s)).epsilon(1e-12));
    CHECK(stein_converse_rate(kZero, kOne, 0.0, 0.0) == 0.0);
    CHECK(std::isinf(stein_converse_rate(kZero, kOne, 1.0, 0.0)));
  }
}

TEST_CASE("dp shortcut bounds") {
  const NeighborSet nb = orthogonal_neighbors();

  SUBCASE("precondition failure carries the worst pair") {
    const QuantumChannel id2 = QuantumChannel({Matrix::Identity(2, 2)});
    CHECK_THROWS_WITH_AS(dp_shortcut_bounds(id2, nb, 3.0),
                         doctest::Contains("worst pair"),
                         std::invalid_argument);
  }

  SUBCASE("depolarizing at its exact eps") {
    const double p = 0.25;
    const QuantumChannel dep = depolarizing(p, kMixed);
    const std::vector<BoundReport> reps =
        dp_shortcut_bounds(dep, nb, kDepolP025EpsStar);
    REQUIRE(reps.size() == 4);
    for (std::size_t k = 0; k < reps.size(); ++k) {
      CAPTURE(k);
      CHECK(reps[k].slack >= -1e-9);
      CHECK(reps[k].bound_name ==
            (k % 2 == 0 ? "dp-pinsker" : "dp-continuity"));
    }
  }

  SUBCASE("constant channel collapses every lhs to zero") {
    const QuantumChannel cc = constant_channel(kMixed);
    const std::vector<BoundReport> reps = dp_shortcut_bounds(cc, nb, 0.5);
    for (const BoundReport& r : reps) {
      CHECK(std::abs(r.lhs) <= 1e-12);
      CHECK(r.slack >= -1e-12);
    }
  }

  SUBCASE("identical neighbor pair gives 0 <= 0") {
    const NeighborSet self = symmetric_closure({{kMixed, kMixed}});
    const QuantumChannel dep = depolarizing(0.5, kMixed);
    const std::vector<BoundReport> reps = dp_shortcut_bounds(dep, self, 1.0);
    REQUIRE(reps.size() == 2);
    for (const BoundReport& r : reps) {
      CHECK(std::abs(r.lhs) <= 1e-12);
      CHECK(std::abs(r.rhs) <= 1e-12);
    }
  }

  SUBCASE("supplied tau list is honored") {
    const QuantumChannel dep = depolarizing(0.4, kMixed);
    const std::vector<DensityMatrix> taus = {diag_state({0.6, 0.4})};
    const std::vector<BoundReport> reps =
        dp_shortcut_bounds(dep, nb, std::log(4.0), taus);
    for (const BoundReport& r : reps) CHECK(r.slack >= -1e-9);
  }

  SUBCASE("random eps-DP channels keep both shortcut bounds") {
    for (int t = 0; t < 20; ++t) {
      const QuantumChannel ch = random_channel(2, 2, 2, 5000 + 2 * t);
      const NeighborSet rnb = symmetric_closure(
          {{random_density(2, 2, 5001 + 2 * t), random_density(2, 2, 5002 + 2 * t)}});
      // Audit the actual worst D_max, then run with an eps that passes.
      double eps = 0.0;
      for (const auto& [a, b] : rnb.pairs) {
        eps = std::max(eps, d_max(apply_channel(ch, a), apply_channel(ch, b)));
      }
      eps += 1e-9;
      const std::vector<BoundReport> reps = dp_shortcut_bounds(ch, rnb, eps);
      CAPTURE(t);
      for (const BoundReport& r : reps) CHECK(r.slack >= -1e-9);
    }
  }
}
