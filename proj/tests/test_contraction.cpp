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
#include <cstdint>
#include <vector>

#include "qfdiv/contraction.hpp"
#include "qfdiv/convex.hpp"
#include "qfdiv/fdiv.hpp"
#include "qfdiv/hockey.hpp"
#include "qfdiv/states.hpp"

using namespace qfdiv;

namespace {

QuantumChannel identity_channel(Eigen::Index d) {
  return QuantumChannel({Matrix::Identity(d, d)});
}

// Replaces every input by the maximally mixed state.
QuantumChannel constant_channel(Eigen::Index d) {
  std::vector<Matrix> kraus;
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      Matrix m = Matrix::Zero(d, d);
      m(k, l) = w;
      kraus.push_back(m);
    }
  }
  return QuantumChannel(std::move(kraus));
}

OptimizerConfig quick_cfg(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = 12;
  cfg.max_iters = 300;
  cfg.seed = seed;
  return cfg;
}

double combined_tol(const DivergenceValue& a, const DivergenceValue& b) {
  return 10.0 * (a.abs_error + b.abs_error) + 1e-9;
}

}  // namespace

TEST_CASE("eta_tr and eta_x2_local match depolarizing closed forms") {
  const DensityMatrix tau2 = maximally_mixed(2);
  for (const double p : {0.1, 0.25, 0.5}) {
    const QuantumChannel depol = depolarizing(p, tau2);
    const ContractionEstimate tr = eta_tr(depol, quick_cfg(11));
    CHECK(std::abs(tr.value - (1.0 - p)) <= 1e-3);
    CHECK(tr.kind == EstimateKind::optimized_lower_bound);

    const ContractionEstimate x2 = eta_x2_local(depol, tau2, quick_cfg(12));
    CHECK(std::abs(x2.value - (1.0 - p) * (1.0 - p)) <= 1e-3);
    CHECK(x2.kind == EstimateKind::optimized_lower_bound);
  }
}

TEST_CASE("identity and constant channels pin the eta extremes") {
  for (const Eigen::Index d : {Eigen::Index(2), Eigen::Index(3)}) {
    const QuantumChannel id = identity_channel(d);
    const QuantumChannel cnst = constant_channel(d);
    CHECK(eta_tr(id, quick_cfg(21)).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eta_gamma(id, 2.0, quick_cfg(22)).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eta_tr(cnst, quick_cfg(23)).value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eta_gamma(cnst, 3.0, quick_cfg(24)).value == doctest::Approx(0.0).epsilon(1e-12));

    const DensityMatrix tau = maximally_mixed(d);
    CHECK(eta_x2_local(id, tau, quick_cfg(25)).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eta_x2_local(cnst, tau, quick_cfg(26)).value == doctest::Approx(0.0).epsilon(1e-12));

    const ContractionEstimate idf = eta_f_sampled(id, make_kl(), 6, 27);
    CHECK(idf.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(idf.kind == EstimateKind::sampled_lower_bound);
    CHECK(eta_f_sampled(cnst, make_kl(), 6, 28).value == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("validation errors") {
  const QuantumChannel id = identity_channel(2);
  CHECK_THROWS_AS(eta_gamma(id, 0.5, {}), std::invalid_argument);
  OptimizerConfig bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(eta_gamma(id, 1.0, bad), std::invalid_argument);
  const DensityMatrix pure0 = pure_density(Eigen::VectorXcd::Unit(2, 0));
  CHECK_THROWS_AS(eta_x2_local(id, pure0, {}), std::invalid_argument);
  CHECK_THROWS_AS(eta_f_sampled(id, make_linear(0.5), 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(eta_f_sampled(id, make_kl(), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(less_noisy_falsifier(id, identity_channel(3), make_kl(), 5, 1),
                  std::invalid_argument);
}

TEST_CASE("witness pairs reproduce the reported value") {
  const QuantumChannel ch = random_channel(2, 2, 2, 31);

  const ContractionEstimate tr = eta_tr(ch, quick_cfg(32));
  const double re_tr = detail::e_gamma_raw(
      apply_channel(ch, DensityMatrix::trusted(tr.witness_rho)).mat(),
      apply_channel(ch, DensityMatrix::trusted(tr.witness_sigma)).mat(), 1.0);
  CHECK(std::abs(re_tr - tr.value) <= 1e-8);

  const DensityMatrix tau2 = maximally_mixed(2);
  const ContractionEstimate x2 = eta_x2_local(ch, tau2, quick_cfg(33));
  const DensityMatrix wrho = DensityMatrix::trusted(x2.witness_rho);
  const double re_x2 = chi2_closed(apply_channel(ch, wrho), apply_channel(ch, tau2)) /
                       chi2_closed(wrho, tau2);
  CHECK(std::abs(re_x2 - x2.value) <= 1e-8);

  const ConvexFunction kl = make_kl();
  const ContractionEstimate fs = eta_f_sampled(ch, kl, 40, 34);
  const DensityMatrix frho = DensityMatrix::trusted(fs.witness_rho);
  const DensityMatrix fsig = DensityMatrix::trusted(fs.witness_sigma);
  const double re_f = d_f_integral(kl, apply_channel(ch, frho), apply_channel(ch, fsig)).value /
                      d_f_integral(kl, frho, fsig).value;
  CHECK(std::abs(re_f - fs.value) <= 1e-8);
}

TEST_CASE("eta hierarchy: chi2 local <= f local <= trace global") {
  const std::vector<QuantumChannel> channels = {
      random_channel(2, 2, 2, 41), random_channel(2, 2, 3, 42),
      random_channel(3, 3, 2, 43)};
  const std::vector<ConvexFunction> fs = {make_kl(), make_hellinger(1.5)};
  int idx = 0;
  for (const QuantumChannel& ch : channels) {
    const Eigen::Index d = ch.dim_in();
    const DensityMatrix sigma = random_density(d, d, 44 + static_cast<std::uint64_t>(idx));
    const double tr = eta_tr(ch, quick_cfg(45)).value;
    for (const ConvexFunction& f : fs) {
      const double x2 = eta_x2_local(ch, sigma, quick_cfg(46)).value;
      const double f_local =
          eta_f_sampled(ch, f, 90, 47 + static_cast<std::uint64_t>(idx), sigma).value;
      const double f_global = eta_f_sampled(ch, f, 90, 48 + static_cast<std::uint64_t>(idx)).value;
      CAPTURE(idx);
      CAPTURE(f.name);
      CHECK(x2 <= f_local + 2e-3);
      CHECK(f_local <= f_global + 2e-3);
      CHECK(f_global <= tr + 2e-3);
    }
    ++idx;
  }
}

TEST_CASE("operator-convex collapse on depolarizing channels") {
  const DensityMatrix tau2 = maximally_mixed(2);
  for (const double p : {0.15, 0.3}) {
    const QuantumChannel depol = depolarizing(p, tau2);
    const double x2_global = eta_f_sampled(depol, make_chi2(), 150, 51).value;
    const std::vector<ConvexFunction> fs = {make_kl(), make_hellinger(0.5),
                                            make_hellinger(1.5), make_lecam(0.3)};
    for (const ConvexFunction& f : fs) {
      const double fv = eta_f_sampled(depol, f, 150, 52).value;
      CAPTURE(p);
      CAPTURE(f.name);
      CHECK(std::abs(fv - x2_global) <= 5e-3);
    }
  }
}

TEST_CASE("eta_gamma is non-increasing along a gamma grid") {
  const std::vector<QuantumChannel> channels = {
      depolarizing(0.3, maximally_mixed(2)), random_channel(2, 2, 2, 61),
      random_channel(3, 3, 2, 62)};
  const std::vector<double> grid = {1.0, 1.5, 2.0, 3.0, 5.0};
  OptimizerConfig grid_cfg = quick_cfg(63);
  grid_cfg.restarts = 24;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    double prev = 2.0;
    for (const double g : grid) {
      const double v = eta_gamma(channels[c], g, grid_cfg).value;
      CAPTURE(c);
      CAPTURE(g);
      // Each point is an independent lower bound; the slack absorbs
      // optimizer shortfall at the harder mid-grid points.
      CHECK(v <= prev + 1e-3);
      prev = v;
    }
  }
  // Depolarizing closed form at gamma > 1: max(0, (1-p) - (gamma-1)p/2).
  const double v15 = eta_gamma(channels[0], 1.5, quick_cfg(64)).value;
  CHECK(std::abs(v15 - (0.7 - 0.5 * 0.3 / 2.0)) <= 1e-3);
}

TEST_CASE("depolarizing pull-back agrees with the registry member") {
  Rng rng(71);
  const std::vector<ConvexFunction> fs = {make_kl(), make_js(), make_hellinger(1.5)};
  for (int s = 0; s < 6; ++s) {
    const DensityMatrix rho = random_density(2, 2, 72 + static_cast<std::uint64_t>(s));
    const DensityMatrix sigma = random_density(2, 2, 80 + static_cast<std::uint64_t>(s));
    const double p = 0.15 + 0.7 * rng.uniform();
    for (const ConvexFunction& f : fs) {
      const DivergenceValue lhs = depol_pullback_divergence(f, p, sigma, rho);
      const DivergenceValue rhs = d_f_integral(make_depol_pullback(f, p), rho, sigma);
      CHECK(std::abs(lhs.value - rhs.value) <= combined_tol(lhs, rhs));
    }
    // chi2 contracts by exactly (1-p)^2.
    const DivergenceValue c = depol_pullback_divergence(make_chi2(), p, sigma, rho);
    const double expect = (1.0 - p) * (1.0 - p) * chi2_closed(rho, sigma);
    CHECK(std::abs(c.value - expect) <= 10.0 * c.abs_error + 1e-8);
  }
  // Edges: p = 0 is the plain divergence, p = 1 collapses to zero.
  const DensityMatrix rho = random_density(2, 2, 91);
  const DensityMatrix sigma = random_density(2, 2, 92);
  const DivergenceValue base = d_f_integral(make_kl(), rho, sigma);
  const DivergenceValue at0 = depol_pullback_divergence(make_kl(), 0.0, sigma, rho);
  CHECK(std::abs(at0.value - base.value) <= combined_tol(at0, base));
  const DivergenceValue at1 = depol_pullback_divergence(make_kl(), 1.0, sigma, rho);
  CHECK(std::abs(at1.value) <= 1e-10);
}

TEST_CASE("f mutual information via the direct-sum decomposition") {
  const ConvexFunction kl = make_kl();

  CQState flat;
  flat.probs = {0.4, 0.6};
  const DensityMatrix shared = random_density(2, 2, 101);
  flat.conditionals = {shared, shared};
  const DivergenceValue zero = f_mutual_information(kl, flat);
  CHECK(std::abs(zero.value) <= 1e-10);

  CQState bit;
  bit.probs = {0.5, 0.5};
  bit.conditionals = {pure_density(Eigen::VectorXcd::Unit(2, 0)),
                      pure_density(Eigen::VectorXcd::Unit(2, 1))};
  const DivergenceValue perfect = f_mutual_information(kl, bit);
  CHECK(std::abs(perfect.value - std::log(2.0)) <= 10.0 * perfect.abs_error + 1e-7);

  // Cross-check against the embedded block-diagonal evaluation.
  CQState cq;
  cq.probs = {0.2, 0.5, 0.3};
  cq.conditionals = {random_density(2, 1, 102), random_density(2, 2, 103),
                     random_density(2, 2, 104)};
  const DivergenceValue direct = f_mutual_information(kl, cq);
  Matrix bar = Matrix::Zero(2, 2);
  for (std::size_t u = 0; u < cq.probs.size(); ++u)
    bar += cq.probs[u] * cq.conditionals[u].mat();
  Matrix prior = Matrix::Zero(3, 3);
  for (std::size_t u = 0; u < cq.probs.size(); ++u) prior(u, u) = cq.probs[u];
  const DivergenceValue embedded =
      d_f_integral(kl, cq_embed(cq), DensityMatrix::trusted(tensor(prior, bar)));
  CHECK(std::abs(direct.value - embedded.value) <= combined_tol(direct, embedded));
  CHECK(direct.support_flag == embedded.support_flag);

  CQState bad;
  bad.probs = {0.7, 0.7};
  bad.conditionals = {shared, shared};
  CHECK_THROWS_AS(f_mutual_information(kl, bad), std::invalid_argument);
}

TEST_CASE("less-noisy falsifier finds violations exactly when they exist") {
  const ConvexFunction kl = make_kl();
  const DensityMatrix tau2 = maximally_mixed(2);
  const QuantumChannel id = identity_channel(2);
  const QuantumChannel mild = depolarizing(0.5, tau2);
  const QuantumChannel harsh = depolarizing(0.9, tau2);

  const LessNoisyReport same = less_noisy_falsifier(mild, mild, kl, 30, 111);
  CHECK_FALSE(same.violation_found);
  CHECK(same.samples_checked == 30);
  CHECK(same.worst_gap >= -1e-12);

  const LessNoisyReport dominated = less_noisy_falsifier(id, mild, kl, 30, 112);
  CHECK_FALSE(dominated.violation_found);
  CHECK(dominated.worst_gap >= -1e-9);

  const LessNoisyReport violated = less_noisy_falsifier(harsh, id, kl, 60, 113);
  CHECK(violated.violation_found);
  CHECK(violated.samples_checked <= 60);
  CHECK(violated.worst_gap < 0.0);
  // The witness pair itself certifies the violation.
  const DensityMatrix wr = DensityMatrix::trusted(violated.witness_rho);
  const DensityMatrix ws = DensityMatrix::trusted(violated.witness_sigma);
  const DivergenceValue lhs =
      d_f_integral(kl, apply_channel(harsh, wr), apply_channel(harsh, ws));
  const DivergenceValue rhs =
      d_f_integral(kl, apply_channel(id, wr), apply_channel(id, ws));
  CHECK(lhs.value < rhs.value);
}
