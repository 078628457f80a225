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

// Quantum differential privacy: (eps,delta)-DP verification over a
// neighboring relation, the LDP contraction factor phi, a Stein-converse
// rate bound, and DP-specialized inequality shortcuts.

#ifndef QFDIV_DPRIV_HPP
#define QFDIV_DPRIV_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qfdiv/bounds.hpp"
#include "qfdiv/convex.hpp"
#include "qfdiv/states.hpp"

namespace qfdiv {

// Caller-supplied neighboring relation as an explicit pair list. The
// relation stays abstract here; no default neighboring is baked in.
struct NeighborSet {
  std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs;
};

// Builds a NeighborSet with the symmetric closure applied: for every listed
// (rho, sigma) the mirrored (sigma, rho) is appended unless already present
// entrywise. Throws std::invalid_argument on an empty list or mismatched
// dimensions across pairs.
NeighborSet symmetric_closure(
    std::vector<std::pair<DensityMatrix, DensityMatrix>> pairs);

// Outcome of a DP check. worst_hockey is the maximum of
// E_{e^eps}(A(rho)||A(sigma)) over the closed pair list and worst_pair its
// argmax index. For delta = 0 the equivalent max-relative-entropy criterion
// sup D_max <= eps is evaluated independently and reported alongside; the
// two verdicts agree by the vanishing-point identity, and check_dp throws
// std::logic_error if they ever separate beyond the shared boundary
// tolerance.
struct DpReport {
  bool pass = false;
  double eps = 0.0;
  double delta = 0.0;
  double worst_hockey = 0.0;
  std::size_t worst_pair = 0;
  std::optional<double> worst_dmax;  // delta = 0 only
  std::optional<bool> dmax_pass;     // delta = 0 only
};

// (eps,delta)-DP check of a channel over a neighbor set: passes iff
// max E_{e^eps} over the closed pairs is <= delta (within a 1e-12 boundary
// tolerance, so exact zero-crossings do not flip on rounding noise).
// Requires eps >= 0, delta in [0,1], and pair dimensions matching the
// channel input.
DpReport check_dp(const QuantumChannel& channel, const NeighborSet& neighbors,
                  double eps, double delta);

// LDP contraction factor phi(eps, delta) = 1 - e^{-eps}(1 - delta), a bound
// on eta_Tr of any (eps,delta)-LDP channel. Requires eps >= 0 and delta in
// [0,1]; the value lies in [0,1] and is non-decreasing in both arguments.
double phi(double eps, double delta);

// D_f(A(rho)||A(sigma)) <= phi(eps,delta) * D_f(rho||sigma) for any
// (eps,delta)-LDP channel. The LDP membership is verified on a deterministic
// pure-state sample (computational basis plus Haar samples, plus the given
// rho and sigma); pure states are extremal for the hockey-stick, so a
// sampled failure disproves membership and raises std::invalid_argument
// with the witness pair in the message, while a pass certifies only the
// sample. phi = 0 forces rhs = 0 even when D_f(rho||sigma) = +inf.
BoundReport ldp_divergence_bound(const ConvexFunction& f,
                                 const QuantumChannel& channel,
                                 const DensityMatrix& rho,
                                 const DensityMatrix& sigma, double eps,
                                 double delta, double rel_tol = 1e-8);

// Converse rate for asymmetric hypothesis testing through an
// (eps,delta)-LDP channel: the optimal type-2 error exponent is at most
// phi(eps,delta) * D(rho||sigma). Returns that product; +inf when the
// relative entropy diverges and phi > 0.
double stein_converse_rate(const DensityMatrix& rho, const DensityMatrix& sigma,
                           double eps, double delta);

// DP-specialized shortcuts, evaluated per closed neighbor pair after an
// eps-DP (delta = 0) precondition check that throws std::invalid_argument
// on failure. For each pair two reports are emitted in order:
//   dp-pinsker:    D(A(rho)||A(sigma)) <= eps * E_1(A(rho)||A(sigma))
//   dp-continuity: D(A(rho)||A(sigma)) - D(tau||A(sigma))
//                    <= 2 eps * E_1(A(rho)||tau)
// tau is taken from taus (cycled) when supplied; otherwise a random convex
// mixture of the two channel outputs, which keeps supp(tau) inside
// supp(A(sigma)). Supplied taus must satisfy that support condition
// themselves or the lhs may be -inf (the bound still holds).
std::vector<BoundReport> dp_shortcut_bounds(
    const QuantumChannel& channel, const NeighborSet& neighbors, double eps,
    const std::vector<DensityMatrix>& taus = {});

}  // namespace qfdiv

#endif  // QFDIV_DPRIV_HPP
