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

#ifndef QFDIV_CONTRACTION_HPP
#define QFDIV_CONTRACTION_HPP

#include <cstdint>
#include <optional>

#include "qfdiv/convex.hpp"
#include "qfdiv/fdiv.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// Multi-start derivative-free ascent; deterministic given seed. Restart
// streams derive from (seed, restart index).
struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 500;
  double step_tol = 1e-10;
  std::uint64_t seed = 1;
};

// Every eta below reports how its value was obtained. The suprema run over
// continua, so optimizer and sampler results carry lower-bound semantics;
// only families with a proven closed form may claim exactness.
enum class EstimateKind {
  exact_closed_form,
  optimized_lower_bound,
  sampled_lower_bound,
};
const char* estimate_kind_name(EstimateKind kind);

struct ContractionEstimate {
  double value = 0.0;  // always within [0, 1]
  EstimateKind kind = EstimateKind::optimized_lower_bound;
  // Argmax input pair; re-evaluating the objective on it reproduces value.
  Matrix witness_rho;
  Matrix witness_sigma;
};

// eta_gamma(A) = sup E_gamma(A(psi)||A(phi)) over orthogonal pure pairs,
// ascended on the pair manifold. gamma >= 1.
ContractionEstimate eta_gamma(const QuantumChannel& ch, double gamma,
                              const OptimizerConfig& cfg = {});

// Dobrushin coefficient, the gamma = 1 case.
ContractionEstimate eta_tr(const QuantumChannel& ch, const OptimizerConfig& cfg = {});

// Sampled sup of D_f(A(rho)||A(sigma)) / D_f(rho||sigma); sigma is fixed
// when given, otherwise sampled too. The sample set mixes global pairs with
// local perturbations (which reach the chi^2 limit) and injects the
// eta_gamma / eta_x2_local witnesses as candidates. Requires f''(1) in
// (0, inf).
ContractionEstimate eta_f_sampled(const QuantumChannel& ch, const ConvexFunction& f,
                                  int n_samples, std::uint64_t seed,
                                  const std::optional<DensityMatrix>& fixed_sigma =
                                      std::nullopt,
                                  double rel_tol = 1e-8);

// chi^2 contraction at fixed full-rank sigma. chi^2 is an exact quadratic
// form in rho - sigma, so the ratio is a Rayleigh quotient; the ascent runs
// over normalized traceless Hermitian perturbation directions.
ContractionEstimate eta_x2_local(const QuantumChannel& ch, const DensityMatrix& sigma,
                                 const OptimizerConfig& cfg = {});

// D_f(D_{p,sigma}(rho) || sigma), the left side of the depolarizing
// pull-back identity; equals D_F(rho||sigma) for F(x) = f((1-p)x + p).
DivergenceValue depol_pullback_divergence(const ConvexFunction& f, double p,
                                          const DensityMatrix& sigma,
                                          const DensityMatrix& rho,
                                          double rel_tol = 1e-8);

// I_f(U:B) of a cq state via the direct-sum decomposition
// sum_u p(u) D_f(rho^u || rho_bar).
DivergenceValue f_mutual_information(const ConvexFunction& f, const CQState& cq,
                                     double rel_tol = 1e-8);

// Searches sampled state pairs for a violation of
// D_f(M(rho)||M(sigma)) >= D_f(N(rho)||N(sigma)). A violation falsifies
// "M less-noisy-dominates N"; absence of one is inconclusive.
struct LessNoisyReport {
  bool violation_found = false;
  int samples_checked = 0;
  double worst_gap = 0.0;  // most negative lhs - rhs seen (0 if none usable)
  Matrix witness_rho;
  Matrix witness_sigma;
};
LessNoisyReport less_noisy_falsifier(const QuantumChannel& channel_m,
                                     const QuantumChannel& channel_n,
                                     const ConvexFunction& f, int n_samples,
                                     std::uint64_t seed);

}  // namespace qfdiv

#endif  // QFDIV_CONTRACTION_HPP
