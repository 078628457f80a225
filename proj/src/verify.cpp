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

#include "qfdiv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qfdiv/contraction.hpp"
#include "qfdiv/convex.hpp"
#include "qfdiv/dpriv.hpp"
#include "qfdiv/fdiv.hpp"
#include "qfdiv/hockey.hpp"
#include "qfdiv/renyi.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Mixes the suite seed with a per-property stream index so adding a
// property never reshuffles the samples of the ones before it.
std::uint64_t stream(std::uint64_t seed, std::uint64_t idx) {
  return seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1));
}

class Battery {
 public:
  explicit Battery(VerifySummary& summary) : summary_(summary) {}

  PropertyResult& prop(std::string name) {
    summary_.properties.push_back(PropertyResult{std::move(name), 0, 0, kInf});
    return summary_.properties.back();
  }

  // headroom >= 0 passes; NaN is recorded as -inf so it both counts as a
  // violation and shows up in worst_headroom.
  void check(PropertyResult& p, double headroom) {
    if (std::isnan(headroom)) headroom = -kInf;
    ++p.checks;
    if (headroom < 0.0) ++p.violations;
    p.worst_headroom = std::min(p.worst_headroom, headroom);
  }

  void keep(const BoundReport& r) { summary_.reports.push_back(r); }

  // Bound reports pass when slack >= -tol.
  void check_report(PropertyResult& p, const BoundReport& r, double tol) {
    keep(r);
    check(p, r.slack + tol);
  }

 private:
  VerifySummary& summary_;
};

DensityMatrix diag2(double a) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = 1.0 - a;
  return DensityMatrix::trusted(m);
}

std::vector<ConvexFunction> registry_battery() {
  std::vector<ConvexFunction> fns;
  fns.push_back(make_kl());
  fns.push_back(make_chi2());
  fns.push_back(make_js());
  fns.push_back(make_hellinger(0.5));
  fns.push_back(make_hellinger(2.0));
  fns.push_back(make_lecam(0.3));
  return fns;
}

void suite_hockey(Battery& b, int seeds, const std::vector<Eigen::Index>& dims,
                  std::uint64_t seed) {
  auto& exchange = b.prop("hockey.exchange");
  auto& e1_is_tr = b.prop("hockey.e1-trace-distance");
  auto& monotone = b.prop("hockey.gamma-monotone");
  auto& convex = b.prop("hockey.gamma-convex");
  auto& dpi = b.prop("hockey.data-processing");
  auto& vanish = b.prop("hockey.vanishes-past-dmax");
  const double gammas[] = {1.0, 1.5, 2.0, 4.0};
  int idx = 0;
  for (Eigen::Index d : dims) {
    for (int s = 0; s < seeds; ++s, ++idx) {
      const std::uint64_t sd = stream(seed, static_cast<std::uint64_t>(idx));
      const DensityMatrix rho = random_density(d, d, sd);
      const DensityMatrix sig = random_density(d, d, sd + 1);
      for (double g : {1.3, 2.0, 5.0}) {
        const double lhs = e_gamma(rho, sig, g);
        const double rhs = g * e_gamma(sig, rho, 1.0 / g);
        b.check(exchange, 1e-10 - std::abs(lhs - rhs));
      }
      b.check(e1_is_tr,
              1e-12 - std::abs(e_gamma(rho, sig, 1.0) - trace_distance(rho, sig)));
      double prev = kInf;
      for (double g : gammas) {
        const double cur = e_gamma(rho, sig, g);
        b.check(monotone, prev - cur + 1e-12);
        prev = cur;
      }
      for (int k = 0; k + 2 < 4; ++k) {
        const double mid = 0.5 * (gammas[k] + gammas[k + 2]);
        const double chord =
            0.5 * (e_gamma(rho, sig, gammas[k]) + e_gamma(rho, sig, gammas[k + 2]));
        b.check(convex, chord - e_gamma(rho, sig, mid) + 1e-12);
      }
      const QuantumChannel ch = random_channel(d, d, d, sd + 2);
      for (double g : {1.0, 2.0}) {
        b.check(dpi, e_gamma(rho, sig, g) -
                         e_gamma(apply_channel(ch, rho), apply_channel(ch, sig), g) +
                         1e-10);
      }
      const double dm = d_max(rho, sig);
      if (std::isfinite(dm)) {
        b.check(vanish, 1e-10 - e_gamma(rho, sig, std::exp(dm) + 1e-9));
      }
    }
  }
}

void suite_fdiv(Battery& b, int seeds, const std::vector<Eigen::Index>& dims,
                std::uint64_t seed) {
  auto& umegaki_id = b.prop("fdiv.umegaki-identity");
  auto& chi2_id = b.prop("fdiv.chi2-identity");
  auto& classical = b.prop("fdiv.classical-reduction");
  auto& dpi = b.prop("fdiv.data-processing");
  auto& skew_id = b.prop("fdiv.skew-identity");
  auto& scaling = b.prop("fdiv.generalized-scaling");
  const ConvexFunction kl = make_kl();
  const ConvexFunction chi2 = make_chi2();
  const ConvexFunction js = make_js();
  const auto fns = registry_battery();
  int idx = 0;
  for (Eigen::Index d : dims) {
    for (int s = 0; s < seeds; ++s, ++idx) {
      const std::uint64_t sd = stream(seed, 101 + static_cast<std::uint64_t>(idx));
      const DensityMatrix rho = random_density(d, d, sd);
      const DensityMatrix sig = random_density(d, d, sd + 1);
      const auto dkl = d_f_integral(kl, rho, sig);
      b.check(umegaki_id, std::max(1e-7, 10.0 * dkl.abs_error) -
                              std::abs(dkl.value - umegaki(rho, sig)));
      const auto dx2 = d_f_integral(chi2, rho, sig);
      b.check(chi2_id, std::max(1e-7, 10.0 * dx2.abs_error) -
                           std::abs(dx2.value - chi2_closed(rho, sig)));

      // Commuting pair from the sigma spectrum plus a reshuffled copy.
      Rng rng(sd + 2);
      Eigen::VectorXd p(d), q(d);
      for (Eigen::Index i = 0; i < d; ++i) {
        p(i) = 0.1 + rng.uniform();
        q(i) = 0.1 + rng.uniform();
      }
      p /= p.sum();
      q /= q.sum();
      const DensityMatrix dp_state = DensityMatrix::trusted(
          p.cast<std::complex<double>>().asDiagonal());
      const DensityMatrix dq_state = DensityMatrix::trusted(
          q.cast<std::complex<double>>().asDiagonal());
      std::vector<double> pv(p.data(), p.data() + d);
      std::vector<double> qv(q.data(), q.data() + d);
      for (const auto& f : fns) {
        const auto dv = d_f_integral(f, dp_state, dq_state);
        b.check(classical,
                1e-7 - std::abs(dv.value - classical_f_div(pv, qv, f)));
      }

      const QuantumChannel ch = random_channel(d, d, d, sd + 3);
      const auto din = d_f_integral(js, rho, sig);
      const auto dout =
          d_f_integral(js, apply_channel(ch, rho), apply_channel(ch, sig));
      b.check(dpi, din.value - dout.value + din.abs_error + dout.abs_error + 1e-9);

      const double lam = 0.3, mu = 0.7;
      const auto lhs = skew_divergence(kl, lam, mu, rho, sig);
      const auto rhs = d_f_integral(make_skew(kl, lam, mu), rho, sig);
      b.check(skew_id, 1e-7 + lhs.abs_error + rhs.abs_error -
                           std::abs(lhs.value - rhs.value));

      const double a = 0.5 + rng.uniform(), bb = 0.5 + rng.uniform();
      const auto gen = d_f_generalized(kl, HermitianOperator(a * rho.mat()),
                                       HermitianOperator(bb * sig.mat()));
      const double expect = a * umegaki(rho, sig) + a * std::log(a / bb);
      b.check(scaling, std::max(1e-7, 10.0 * gen.abs_error) -
                           std::abs(gen.value - expect));
    }
  }
}

void suite_renyi(Battery& b, int seeds, const std::vector<Eigen::Index>& dims,
                 std::uint64_t seed) {
  auto& transform = b.prop("renyi.h-to-d-transform");
  auto& sandwich = b.prop("renyi.measured-below-geometric");
  auto& ordering = b.prop("renyi.sandwiched-below-petz");
  auto& faithful = b.prop("renyi.faithfulness");
  auto& classical = b.prop("renyi.classical-reduction");
  int idx = 0;
  for (Eigen::Index d : dims) {
    for (int s = 0; s < seeds; ++s, ++idx) {
      const std::uint64_t sd = stream(seed, 211 + static_cast<std::uint64_t>(idx));
      const DensityMatrix rho = random_density(d, d, sd);
      const DensityMatrix sig = random_density(d, d, sd + 1);
      for (double alpha : {0.5, 2.0}) {
        const auto h = h_alpha(rho, sig, alpha);
        const auto dv = d_alpha(rho, sig, alpha);
        const double via_h =
            std::log1p((alpha - 1.0) * h.value) / (alpha - 1.0);
        b.check(transform, 1e-6 - std::abs(via_h - dv.value));
        const double lo = measured_renyi_lower(rho, sig, alpha,
                                               MeasurementStrategy::sigma_eigenbasis());
        const double hi = geometric_renyi(rho, sig, alpha);
        b.check(sandwich,
                std::min(dv.value - lo, hi - dv.value) + dv.abs_error + 1e-7);
        b.check(ordering,
                petz_renyi(rho, sig, alpha) - sandwiched_renyi(rho, sig, alpha) +
                    1e-9);
      }
      b.check(faithful, 1e-8 - std::abs(d_alpha(rho, rho, 1.7).value));

      Rng rng(sd + 2);
      std::vector<double> pv(d), qv(d);
      double ps = 0, qs = 0;
      for (Eigen::Index i = 0; i < d; ++i) {
        pv[static_cast<std::size_t>(i)] = 0.1 + rng.uniform();
        qv[static_cast<std::size_t>(i)] = 0.1 + rng.uniform();
        ps += pv[static_cast<std::size_t>(i)];
        qs += qv[static_cast<std::size_t>(i)];
      }
      Matrix dm = Matrix::Zero(d, d), dn = Matrix::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        pv[static_cast<std::size_t>(i)] /= ps;
        qv[static_cast<std::size_t>(i)] /= qs;
        dm(i, i) = pv[static_cast<std::size_t>(i)];
        dn(i, i) = qv[static_cast<std::size_t>(i)];
      }
      const auto dq = d_alpha(DensityMatrix::trusted(dm),
                              DensityMatrix::trusted(dn), 1.5);
      b.check(classical, 1e-6 + dq.abs_error -
                             std::abs(dq.value - classical_renyi(pv, qv, 1.5)));
    }
  }
}

void suite_contraction(Battery& b, int seeds, std::uint64_t seed) {
  auto& range = b.prop("contraction.range");
  auto& depol_tr = b.prop("contraction.depolarizing-eta-tr");
  auto& hierarchy = b.prop("contraction.chi2-f-trace-hierarchy");
  auto& pullback = b.prop("contraction.depol-pullback-identity");
  OptimizerConfig quick;
  quick.restarts = 12;
  quick.max_iters = 300;

  const DensityMatrix tau2 = maximally_mixed(2);
  for (double p : {0.25, 0.5}) {
    quick.seed = stream(seed, 301 + static_cast<std::uint64_t>(p * 100));
    const auto est = eta_tr(depolarizing(p, tau2), quick);
    b.check(range, std::min(est.value, 1.0 - est.value) + 1e-12);
    b.check(depol_tr, 2e-3 - std::abs(est.value - (1.0 - p)));
  }

  const ConvexFunction js = make_js();
  const int channels = std::min(seeds, 6);
  for (int c = 0; c < channels; ++c) {
    const std::uint64_t sd = stream(seed, 311 + static_cast<std::uint64_t>(c));
    const QuantumChannel ch = random_channel(2, 2, 2, sd);
    const DensityMatrix sigma = random_density(2, 2, sd + 3);
    quick.seed = sd + 1;
    const auto tr = eta_tr(ch, quick);
    const auto f = eta_f_sampled(ch, js, 90, sd + 2, sigma);
    quick.seed = sd + 4;
    const auto x2 = eta_x2_local(ch, sigma, quick);
    b.check(hierarchy, tr.value - f.value + 2e-3);
    b.check(hierarchy, f.value - x2.value + 2e-3);
  }

  const ConvexFunction kl = make_kl();
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t sd = stream(seed, 331 + static_cast<std::uint64_t>(s));
    const DensityMatrix rho = random_density(2, 2, sd);
    const DensityMatrix sig = random_density(2, 2, sd + 1);
    const double p = 0.25;
    const auto lhs = depol_pullback_divergence(kl, p, rho, sig);
    const auto rhs = d_f_integral(make_depol_pullback(kl, p), rho, sig);
    b.check(pullback, 1e-7 + lhs.abs_error + rhs.abs_error -
                          std::abs(lhs.value - rhs.value));
  }
}

void suite_bounds(Battery& b, int seeds, const std::vector<Eigen::Index>& dims,
                  std::uint64_t seed) {
  auto& nonneg = b.prop("bounds.nonnegative-slack");
  auto& tight = b.prop("bounds.commuting-tight-revpin");
  auto& amort = b.prop("bounds.amortized");
  const ConvexFunction js = make_js();
  const ConvexFunction kl = make_kl();
  int idx = 0;
  for (Eigen::Index d : dims) {
    for (int s = 0; s < seeds; ++s, ++idx) {
      const std::uint64_t sd = stream(seed, 401 + static_cast<std::uint64_t>(idx));
      const DensityMatrix rho = random_density(d, d, sd);
      const DensityMatrix sig = random_density(d, d, sd + 1);
      const DensityMatrix tau = random_density(d, d, sd + 2);
      const auto klrp = reverse_pinsker_kl(rho, sig);
      b.check_report(nonneg, klrp.tight, 1e-9);
      b.check_report(nonneg, klrp.thompson, 1e-9);
      b.check_report(nonneg, klrp.omega, 1e-9);
      const auto frp = reverse_pinsker_f(js, rho, sig);
      b.check_report(nonneg, frp.first, 1e-7);
      b.check_report(nonneg, frp.second, 1e-7);
      const auto hrp = reverse_pinsker_hellinger(rho, sig, 0.5);
      b.check_report(nonneg, hrp.hellinger, 1e-9);
      b.check_report(nonneg, hrp.renyi, 1e-9);
      b.check_report(nonneg, fvdg_improved(rho, sig), 1e-9);
      b.check_report(nonneg, fvdg_asymmetric(rho, sig), 1e-9);
      b.check_report(nonneg, entropy_continuity(rho, sig), 1e-9);
      const auto cont = continuity_first_arg(kl, rho, tau, sig);
      b.check_report(nonneg, cont.general, 1e-7);
      if (cont.closed) b.check_report(nonneg, *cont.closed, 1e-7);
    }
  }
  for (int s = 0; s < std::max(seeds / 2, 4); ++s) {
    const std::uint64_t sd = stream(seed, 451 + static_cast<std::uint64_t>(s));
    Rng rng(sd);
    const auto r = reverse_pinsker_kl(diag2(0.05 + 0.9 * rng.uniform()),
                                      diag2(0.05 + 0.9 * rng.uniform()));
    b.keep(r.tight);
    b.check(tight, 1e-5 - std::abs(r.tight.slack));
  }
  AmortizedConfig cfg;
  cfg.n_samples = 8;
  cfg.diamond.restarts = 8;
  cfg.diamond.max_iters = 150;
  for (int s = 0; s < std::min(seeds, 3); ++s) {
    const std::uint64_t sd = stream(seed, 471 + static_cast<std::uint64_t>(s));
    cfg.seed = sd;
    cfg.diamond.seed = sd + 1;
    const auto r = amortized_bound(js, random_channel(2, 2, 2, sd + 2),
                                   random_channel(2, 2, 2, sd + 3), cfg);
    b.check_report(amort, r, 1e-6);
  }
}

void suite_dp(Battery& b, int seeds, const std::vector<Eigen::Index>& dims,
              std::uint64_t seed) {
  auto& agree = b.prop("dp.criteria-agreement");
  auto& phi_ok = b.prop("dp.phi-range-monotone");
  auto& depol = b.prop("dp.depolarizing-closed-form");
  auto& ldp = b.prop("dp.ldp-divergence-bound");
  auto& shortcuts = b.prop("dp.shortcut-bounds");

  double prev = -1.0;
  for (double eps : {0.0, 0.5, 1.0, 2.0}) {
    for (double delta : {0.0, 0.25, 1.0}) {
      const double v = phi(eps, delta);
      b.check(phi_ok, std::min(v, 1.0 - v) + 1e-12);
    }
    const double v0 = phi(eps, 0.0);
    b.check(phi_ok, v0 - prev);
    prev = v0;
  }

  int idx = 0;
  for (Eigen::Index d : dims) {
    for (int s = 0; s < seeds; ++s, ++idx) {
      const std::uint64_t sd = stream(seed, 501 + static_cast<std::uint64_t>(idx));
      const QuantumChannel ch = random_channel(d, d, d, sd);
      const auto nb = symmetric_closure(
          {{random_density(d, d, sd + 1), random_density(d, d, sd + 2)}});
      double worst = 0.0;
      for (const auto& pr : nb.pairs) {
        worst = std::max(worst, d_max(apply_channel(ch, pr.first),
                                      apply_channel(ch, pr.second)));
      }
      for (double eps : {worst * 0.9, worst + 1e-6}) {
        const auto rep = check_dp(ch, nb, eps, 0.0);
        b.check(agree, rep.dmax_pass && rep.pass == *rep.dmax_pass ? 1.0 : -1.0);
      }
    }
  }

  const DensityMatrix tau2 = diag2(0.5);
  const auto nb2 = symmetric_closure({{diag2(1.0), diag2(0.0)}});
  for (double p : {0.25, 0.5}) {
    const QuantumChannel ch = depolarizing(p, tau2);
    const double eps_star = std::log((2.0 - p) / p);
    const auto rep = check_dp(ch, nb2, eps_star, 0.0);
    b.check(depol, rep.pass ? 1.0 : -1.0);
    const auto rep2 = check_dp(ch, nb2, eps_star - 1e-6, 0.0);
    b.check(depol, rep2.pass ? -1.0 : 1.0);
    const double delta_closed =
        std::max(0.0, (1.0 - p / 2.0) - std::exp(0.5) * p / 2.0);
    const auto rep3 = check_dp(ch, nb2, 0.5, delta_closed + 1e-12);
    b.check(depol, 1e-9 - std::abs(rep3.worst_hockey - delta_closed));

    const ConvexFunction js = make_js();
    for (int s = 0; s < std::max(seeds / 2, 2); ++s) {
      const std::uint64_t sd = stream(seed, 601 + static_cast<std::uint64_t>(s));
      const auto r = ldp_divergence_bound(js, ch, random_density(2, 2, sd),
                                          random_density(2, 2, sd + 1), eps_star,
                                          0.0);
      b.check_report(ldp, r, 1e-9);
    }
    for (const auto& r : dp_shortcut_bounds(ch, nb2, eps_star)) {
      b.check_report(shortcuts, r, 1e-9);
    }
  }
}

}  // namespace

VerifySummary run_verify(const std::string& suite, int seeds,
                         const std::vector<Eigen::Index>& dims,
                         std::uint64_t seed) {
  if (seeds < 1) throw std::invalid_argument("seeds must be positive");
  if (dims.empty()) throw std::invalid_argument("dims must be non-empty");
  for (Eigen::Index d : dims) {
    if (d < 2 || d > kDimGuard) {
      throw std::invalid_argument("dims entries must lie in [2, " +
                                  std::to_string(kDimGuard) + "]");
    }
  }
  VerifySummary summary;
  summary.suite = suite;
  Battery b(summary);
  bool matched = false;
  const bool all = suite == "all";
  if (all || suite == "hockey") {
    suite_hockey(b, seeds, dims, seed);
    matched = true;
  }
  if (all || suite == "fdiv") {
    suite_fdiv(b, seeds, dims, seed);
    matched = true;
  }
  if (all || suite == "renyi") {
    suite_renyi(b, seeds, dims, seed);
    matched = true;
  }
  if (all || suite == "contraction") {
    suite_contraction(b, seeds, seed);
    matched = true;
  }
  if (all || suite == "bounds") {
    suite_bounds(b, seeds, dims, seed);
    matched = true;
  }
  if (all || suite == "dp") {
    suite_dp(b, seeds, dims, seed);
    matched = true;
  }
  if (!matched) {
    throw std::invalid_argument(
        "unknown suite \"" + suite +
        "\"; valid: hockey, fdiv, renyi, contraction, bounds, dp, all");
  }
  for (const auto& p : summary.properties) {
    summary.total_checks += p.checks;
    summary.total_violations += p.violations;
    summary.worst_headroom = std::min(summary.worst_headroom, p.worst_headroom);
  }
  return summary;
}

}  // namespace qfdiv
