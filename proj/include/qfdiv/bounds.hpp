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

#ifndef QFDIV_BOUNDS_HPP
#define QFDIV_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "qfdiv/contraction.hpp"
#include "qfdiv/convex.hpp"
#include "qfdiv/fdiv.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// One verified inequality lhs <= rhs. slack = rhs - lhs, except that an
// infinite rhs forces slack = +inf so downstream checks stay well defined
// even when the lhs diverges too. inputs_digest is an FNV-1a-64 hash of the
// operation name, parameters, and matrix entries, for audit logs.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::string bound_name;
  std::uint64_t inputs_digest = 0;
};

namespace detail {

// Incremental FNV-1a-64 used by every report producer; field order is part
// of the digest contract, so producers feed name, then parameters, then
// matrices.
struct InputDigest {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(const void* p, std::size_t n);
  void real(double x);
  void text(const std::string& s);
  void mat(const Matrix& m);
  void fn(const ConvexFunction& f);
};

// Assembles a report, applying the infinite-rhs slack rule.
BoundReport make_report(std::string name, double lhs, double rhs,
                        std::uint64_t digest);

}  // namespace detail

// Reverse Pinsker for a general f-divergence: D_f <= zeta1 E_1 <= zeta2 E_1.
// zeta1 weighs f'' by the chord of the convex map gamma -> E_gamma between
// gamma = 1 and its vanishing point e^{D_max}; zeta2 drops the chord and
// keeps the plain f''-mass. Both weights are integrated by quadrature over
// [1, e^{D_max}] in each argument order. The zeta1 bound is an equality
// whenever both gamma -> E_gamma curves are linear (commuting qubit pairs).
// Infinite D_max in either order yields rhs = +inf for both reports.
std::pair<BoundReport, BoundReport> reverse_pinsker_f(const ConvexFunction& f,
                                                      const DensityMatrix& rho,
                                                      const DensityMatrix& sigma,
                                                      double rel_tol = 1e-8);

// The relative-entropy chain in closed form. tight is the chord-weighted
// evaluation (equality for linear E_gamma); thompson relaxes it to the
// Thompson metric max(D_max(rho||sigma), D_max(sigma||rho)); omega to the
// Hilbert projective metric, their sum. tight.rhs <= thompson.rhs and
// tight.rhs <= omega.rhs always.
struct KlReversePinsker {
  BoundReport tight;
  BoundReport thompson;
  BoundReport omega;
};
KlReversePinsker reverse_pinsker_kl(const DensityMatrix& rho,
                                    const DensityMatrix& sigma);

// Closed-form reverse Pinsker for the Hellinger divergence of order alpha
// (alpha > 0, alpha != 1) plus its logarithmic transform for the Renyi
// divergence. At infinite D_max the coefficient takes its analytic limit:
// finite for alpha < 1 (the exponentials decay), +inf for alpha > 1.
struct HellingerReversePinsker {
  BoundReport hellinger;
  BoundReport renyi;
};
HellingerReversePinsker reverse_pinsker_hellinger(const DensityMatrix& rho,
                                                  const DensityMatrix& sigma,
                                                  double alpha,
                                                  double rel_tol = 1e-8);

// Fidelity lower bound 1 - (2 - e^{-D_max(rho||sigma)/2} -
// e^{-D_max(sigma||rho)/2})/2 * E_1, symmetric in the two states; lhs is the
// bound, rhs the fidelity ||sqrt(rho) sqrt(sigma)||_1, so slack = F - bound.
// Equality at orthogonal pure pairs.
BoundReport fvdg_improved(const DensityMatrix& rho, const DensityMatrix& sigma);

// The earlier asymmetric fidelity bound 1 - E_1/(1 + e^{-D_max(rho||sigma)/2});
// kept for comparison, neither bound dominates the other.
BoundReport fvdg_asymmetric(const DensityMatrix& rho, const DensityMatrix& sigma);

// Continuity in the first argument:
// D_f(rho||sigma) - D_f(tau||sigma) <= (W_hi + W_lo) E_1(rho||tau) where
// W_hi integrates f''(s) over [1, e^{D_max(rho||sigma)}] and W_lo integrates
// s^{-2} f''(1/s) over [1, e^{D_max(sigma||rho)}]. general carries the
// quadrature evaluation; closed is emitted for the kl (Hilbert metric), js,
// and hellinger members whose weights have elementary antiderivatives.
// An infinite D_max(rho||sigma) contributes f'(inf) - f'(1) to W_hi; an
// infinite D_max(sigma||rho) makes the report rhs +inf. When both
// divergences on the lhs diverge their difference carries no information
// and is reported as 0.
struct ContinuityReport {
  BoundReport general;
  std::optional<BoundReport> closed;
};
ContinuityReport continuity_first_arg(const ConvexFunction& f,
                                      const DensityMatrix& rho,
                                      const DensityMatrix& tau,
                                      const DensityMatrix& sigma,
                                      double rel_tol = 1e-8);

// |S(rho) - S(sigma)| <= log(max eigenvalue spread) E_1(rho||sigma), the
// von Neumann entropy consequence of the kl continuity bound with the
// maximally mixed reference. Rank-deficient inputs give rhs = +inf.
BoundReport entropy_continuity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Amortized channel-divergence bound D^A_f(a||b) <= xi(f) E_1(a||b).
// lhs is a sampled lower bound on the amortized divergence: the maximum of
// D_f(a ox id(rho) || b ox id(sigma)) - D_f(rho||sigma) over seeded bipartite
// pairs (reference dimension = input dimension), floored at 0 via rho = sigma.
// rhs multiplies xi(f) by a diamond-norm lower estimate that includes every
// sampled marginal plus a multi-start ascent over pure bipartite inputs, so
// slack >= 0 holds sample by sample, not just in expectation.
struct AmortizedConfig {
  int n_samples = 24;
  OptimizerConfig diamond{};
  std::uint64_t seed = 7;
  double rel_tol = 1e-8;
};
BoundReport amortized_bound(const ConvexFunction& f, const QuantumChannel& ch_a,
                            const QuantumChannel& ch_b,
                            const AmortizedConfig& cfg = {});

}  // namespace qfdiv

#endif  // QFDIV_BOUNDS_HPP
