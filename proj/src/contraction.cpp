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

#include "qfdiv/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qfdiv/hockey.hpp"
#include "qfdiv/linalg.hpp"

namespace qfdiv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSeedStride = 0x9e3779b97f4a7c15ULL;

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return seed ^ (kSeedStride * (index + 1));
}

void check_optimizer_config(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts >= 1");
  if (cfg.max_iters < 1) throw std::invalid_argument("OptimizerConfig: max_iters >= 1");
  if (!(cfg.step_tol > 0.0)) throw std::invalid_argument("OptimizerConfig: step_tol > 0");
}

// Gaussian direction in C^d.
Eigen::VectorXcd gaussian_vector(Eigen::Index d, Rng& rng) {
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.cnormal();
  return v;
}

// Orthonormalizes (psi, phi) in place: normalize psi, project it out of phi,
// normalize the remainder. Returns false when phi collapses onto psi.
bool orthonormalize_pair(Eigen::VectorXcd& psi, Eigen::VectorXcd& phi) {
  const double np = psi.norm();
  if (np < 1e-12) return false;
  psi /= np;
  phi -= psi * psi.dot(phi);
  const double nq = phi.norm();
  if (nq < 1e-10) return false;
  phi /= nq;
  return true;
}

// Unit-Frobenius traceless Hermitian direction.
Matrix normalize_direction(Matrix m) {
  const Eigen::Index d = m.rows();
  m = 0.5 * (m + m.adjoint().eval());
  m -= (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
  const double n = m.norm();
  if (n < 1e-14) return Matrix();
  return m / n;
}

Matrix random_direction(Eigen::Index d, Rng& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.cnormal();
    Matrix dir = normalize_direction(std::move(m));
    if (dir.size() > 0) return dir;
  }
  throw std::runtime_error("random_direction: degenerate RNG stream");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

// Hilbert-Schmidt orthonormal basis of traceless Hermitian d x d matrices:
// symmetric and antisymmetric off-diagonal pairs plus diagonal ladder.
std::vector<Matrix> traceless_hermitian_basis(Eigen::Index d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d - 1));
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = k + 1; l < d; ++l) {
      Matrix s = Matrix::Zero(d, d);
      s(k, l) = s(l, k) = r;
      basis.push_back(std::move(s));
      Matrix a = Matrix::Zero(d, d);
      a(k, l) = Complex(0.0, r);
      a(l, k) = Complex(0.0, -r);
      basis.push_back(std::move(a));
    }
  }
  for (Eigen::Index m = 1; m < d; ++m) {
    Matrix t = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(m) * (m + 1.0));
    for (Eigen::Index i = 0; i < m; ++i) t(i, i) = norm;
    t(m, m) = -static_cast<double>(m) * norm;
    basis.push_back(std::move(t));
  }
  return basis;
}

// chi^2(sigma + t Delta || sigma) = t^2 sum_ij c_ij |Delta~_ij|^2 with Delta~
// in sigma's eigenbasis and c the reciprocal logarithmic mean kernel (the
// same kernel chi2_closed sums). The kernel is zeroed outside the support;
// admissible perturbations of a full-rank input map into the output support,
// so nothing is lost there.
struct Chi2Form {
  Matrix u;
  Eigen::MatrixXd c;
};

Chi2Form chi2_form(const Matrix& state) {
  const Spectrum es = eigh(state);
  const Eigen::Index d = es.eigenvalues.size();
  Chi2Form form;
  form.u = es.eigenvectors;
  form.c = Eigen::MatrixXd::Zero(d, d);
  const double cut = kSupportRelTol * std::max(es.eigenvalues.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double li = es.eigenvalues[i];
    if (li <= cut) continue;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double lj = es.eigenvalues[j];
      if (lj <= cut) continue;
      const double diff = li - lj;
      form.c(i, j) = std::abs(diff) < 1e-8 * (li + lj)
                         ? 2.0 / (li + lj)
                         : std::log1p(diff / lj) / diff;
    }
  }
  return form;
}

// Gram matrix of the chi^2 quadratic form over the given Hermitian elements.
Eigen::MatrixXd pencil_gram(const Chi2Form& form, const std::vector<Matrix>& elems) {
  const Eigen::Index m = static_cast<Eigen::Index>(elems.size());
  const Eigen::Index d = form.c.rows();
  std::vector<Matrix> tilde;
  tilde.reserve(elems.size());
  for (const Matrix& x : elems) tilde.push_back(form.u.adjoint() * x * form.u);
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index l = 0; l <= k; ++l) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
          acc += form.c(i, j) *
                 (tilde[static_cast<std::size_t>(k)](i, j) *
                  std::conj(tilde[static_cast<std::size_t>(l)](i, j)))
                     .real();
      g(k, l) = g(l, k) = acc;
    }
  }
  return g;
}

}  // namespace

const char* estimate_kind_name(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::exact_closed_form: return "exact_closed_form";
    case EstimateKind::optimized_lower_bound: return "optimized_lower_bound";
    case EstimateKind::sampled_lower_bound: return "sampled_lower_bound";
  }
  throw std::logic_error("estimate_kind_name: unknown kind");
}

ContractionEstimate eta_gamma(const QuantumChannel& ch, double gamma,
                              const OptimizerConfig& cfg) {
  if (!(gamma >= 1.0)) throw std::invalid_argument("eta_gamma: gamma >= 1 required");
  check_optimizer_config(cfg);
  const Eigen::Index d = ch.dim_in();
  if (d < 2) throw std::invalid_argument("eta_gamma: channel input dimension >= 2");

  // E_gamma between orthogonal pure inputs is exactly 1 for gamma >= 1, so
  // the contraction coefficient is the bare output value.
  const auto objective = [&](const Eigen::VectorXcd& psi,
                             const Eigen::VectorXcd& phi) {
    const Matrix a = apply_channel(ch, pure_density(psi)).mat();
    const Matrix b = apply_channel(ch, pure_density(phi)).mat();
    return detail::e_gamma_raw(a, b, gamma);
  };

  double best = -1.0;
  Eigen::VectorXcd best_psi, best_phi;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    Eigen::VectorXcd psi = random_pure(d, rng);
    Eigen::VectorXcd phi = gaussian_vector(d, rng);
    while (!orthonormalize_pair(psi, phi)) phi = gaussian_vector(d, rng);

    double cur = objective(psi, phi);
    double step = 0.3;
    for (int it = 0; it < cfg.max_iters && step >= cfg.step_tol; ++it) {
      Eigen::VectorXcd psi_new = psi + step * gaussian_vector(d, rng);
      Eigen::VectorXcd phi_new = phi + step * gaussian_vector(d, rng);
      if (!orthonormalize_pair(psi_new, phi_new)) continue;
      const double val = objective(psi_new, phi_new);
      if (val > cur) {
        cur = val;
        psi = std::move(psi_new);
        phi = std::move(phi_new);
        step = std::min(step * 1.5, 0.5);
      } else {
        step *= 0.7;
      }
    }
    if (cur > best) {
      best = cur;
      best_psi = psi;
      best_phi = phi;
    }
  }

  ContractionEstimate est;
  est.value = clamp01(best);
  est.kind = EstimateKind::optimized_lower_bound;
  est.witness_rho = pure_density(best_psi).mat();
  est.witness_sigma = pure_density(best_phi).mat();
  return est;
}

ContractionEstimate eta_tr(const QuantumChannel& ch, const OptimizerConfig& cfg) {
  return eta_gamma(ch, 1.0, cfg);
}

ContractionEstimate eta_x2_local(const QuantumChannel& ch, const DensityMatrix& sigma,
                                 const OptimizerConfig& cfg) {
  check_optimizer_config(cfg);
  if (sigma.dim() != ch.dim_in())
    throw std::invalid_argument("eta_x2_local: sigma dimension mismatch");
  const RealVector sig_ev = eigvalsh(sigma.mat());
  const double lam_min = sig_ev.minCoeff();
  if (lam_min <= 1e-12)
    throw std::invalid_argument("eta_x2_local: sigma must be full rank");

  const Eigen::Index d = sigma.dim();
  const DensityMatrix sig_out = apply_channel(ch, sigma);

  // chi^2 is an exact quadratic form in rho - sigma, so the ratio depends
  // only on the direction; t merely keeps sigma + t*dir inside the PSD cone.
  const auto objective = [&](const Matrix& direction, Matrix* rho_out) {
    const double opnorm = eigvalsh(direction).cwiseAbs().maxCoeff();
    if (!(opnorm > 0.0)) return -1.0;
    const double t = 0.45 * lam_min / opnorm;
    const Matrix rho = sigma.mat() + t * direction;
    const DensityMatrix rho_dm = DensityMatrix::trusted(rho);
    const double den = chi2_closed(rho_dm, sigma);
    if (!std::isfinite(den) || den < 1e-14) return -1.0;
    const double num = chi2_closed(apply_channel(ch, rho_dm), sig_out);
    if (!std::isfinite(num)) return -1.0;
    if (rho_out != nullptr) *rho_out = rho;
    return num / den;
  };

  // The ratio is a Rayleigh quotient of two PSD quadratic forms over the
  // traceless Hermitian directions, so its supremum is the top eigenvalue of
  // the pencil (numerator form, denominator form). Seeding the ascent there
  // keeps the result an evaluated lower bound yet makes it deterministic up
  // to roundoff.
  Matrix pencil_dir;
  {
    const std::vector<Matrix> basis = traceless_hermitian_basis(d);
    std::vector<Matrix> pushed;
    pushed.reserve(basis.size());
    for (const Matrix& t : basis) pushed.push_back(apply_channel_op(ch, t));
    const Eigen::MatrixXd den = pencil_gram(chi2_form(sigma.mat()), basis);
    const Eigen::MatrixXd num = pencil_gram(chi2_form(sig_out.mat()), pushed);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(num, den);
    if (ges.info() == Eigen::Success) {
      const Eigen::VectorXd coef = ges.eigenvectors().col(ges.eigenvalues().size() - 1);
      Matrix dir = Matrix::Zero(d, d);
      for (std::size_t k = 0; k < basis.size(); ++k)
        dir += coef[static_cast<Eigen::Index>(k)] * basis[k];
      pencil_dir = normalize_direction(std::move(dir));
    }
  }

  double best = -1.0;
  Matrix best_rho;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    Matrix dir = (r == 0 && pencil_dir.size() > 0) ? pencil_dir
                                                   : random_direction(d, rng);
    Matrix cur_rho;
    double cur = objective(dir, &cur_rho);
    double step = 0.5;
    for (int it = 0; it < cfg.max_iters && step >= cfg.step_tol; ++it) {
      Matrix cand = normalize_direction(dir + step * random_direction(d, rng));
      if (cand.size() == 0) continue;
      Matrix cand_rho;
      const double val = objective(cand, &cand_rho);
      if (val > cur) {
        cur = val;
        dir = std::move(cand);
        cur_rho = std::move(cand_rho);
        step = std::min(step * 1.5, 1.0);
      } else {
        step *= 0.7;
      }
    }
    if (cur > best) {
      best = cur;
      best_rho = cur_rho;
    }
  }

  ContractionEstimate est;
  est.value = clamp01(best);
  est.kind = EstimateKind::optimized_lower_bound;
  est.witness_rho = best_rho;
  est.witness_sigma = sigma.mat();
  return est;
}

ContractionEstimate eta_f_sampled(const QuantumChannel& ch, const ConvexFunction& f,
                                  int n_samples, std::uint64_t seed,
                                  const std::optional<DensityMatrix>& fixed_sigma,
                                  double rel_tol) {
  if (!(f.fpp_at_1 > 0.0) || !std::isfinite(f.fpp_at_1))
    throw std::invalid_argument("eta_f_sampled: f''(1) must be finite and positive");
  if (n_samples < 1) throw std::invalid_argument("eta_f_sampled: n_samples >= 1");
  const Eigen::Index d = ch.dim_in();
  if (fixed_sigma && fixed_sigma->dim() != d)
    throw std::invalid_argument("eta_f_sampled: fixed_sigma dimension mismatch");

  const bool chi2_path = (f.name == "chi2");
  const auto ratio_of = [&](const DensityMatrix& rho,
                            const DensityMatrix& sigma) -> double {
    double den, num;
    if (chi2_path) {
      den = chi2_closed(rho, sigma);
      if (!std::isfinite(den) || den < 1e-12) return -1.0;
      num = chi2_closed(apply_channel(ch, rho), apply_channel(ch, sigma));
    } else {
      const DivergenceValue dv = d_f_integral(f, rho, sigma, rel_tol);
      den = dv.value;
      if (!std::isfinite(den) || den < 1e-12) return -1.0;
      num = d_f_integral(f, apply_channel(ch, rho), apply_channel(ch, sigma), rel_tol)
                .value;
    }
    if (!std::isfinite(num) || num < 0.0) return -1.0;
    return num / den;
  };

  double best = -1.0;
  Matrix best_rho, best_sigma;
  const auto consider = [&](const DensityMatrix& rho, const DensityMatrix& sigma) {
    const double r = ratio_of(rho, sigma);
    if (r > best) {
      best = r;
      best_rho = rho.mat();
      best_sigma = sigma.mat();
    }
  };

  // Mixing weights interleave global pairs (1.0) with progressively more
  // local perturbations, whose ratios approach the chi^2 Rayleigh quotient.
  static constexpr double kLambda[] = {1.0, 0.5, 0.2, 0.08, 0.03, 0.01};
  for (int s = 0; s < n_samples; ++s) {
    const std::uint64_t su = static_cast<std::uint64_t>(s);
    const DensityMatrix sigma = fixed_sigma
                                    ? *fixed_sigma
                                    : random_density(d, d, stream_seed(seed, 3 * su + 1));
    const Eigen::Index rank = 1 + static_cast<Eigen::Index>((su / 6) % static_cast<std::uint64_t>(d));
    const DensityMatrix tau = random_density(d, rank, stream_seed(seed, 3 * su + 2));
    const double lam = kLambda[s % 6];
    const DensityMatrix rho =
        DensityMatrix::trusted(((1.0 - lam) * sigma.mat() + lam * tau.mat()).eval());
    consider(rho, sigma);
  }

  // Injected candidates. The optimized witnesses are evaluated under the
  // sampled objective, so lower-bound semantics are preserved.
  OptimizerConfig icfg;
  icfg.restarts = 8;
  icfg.max_iters = 250;
  icfg.seed = stream_seed(seed, 0x77);
  static constexpr double kShrink[] = {1.0, 0.3, 0.1, 0.03, 0.01};
  if (fixed_sigma) {
    const double lam_min = eigvalsh(fixed_sigma->mat()).minCoeff();
    if (lam_min > 1e-12) {
      const ContractionEstimate wx2 = eta_x2_local(ch, *fixed_sigma, icfg);
      for (const double mu : kShrink) {
        const Matrix rho_c =
            fixed_sigma->mat() + mu * (wx2.witness_rho - fixed_sigma->mat());
        consider(DensityMatrix::trusted(rho_c), *fixed_sigma);
      }
    }
  } else {
    const ContractionEstimate wtr = eta_tr(ch, icfg);
    for (const double a : {0.95, 0.8, 0.6}) {
      const Matrix rho_c = a * wtr.witness_rho + (1.0 - a) * wtr.witness_sigma;
      const Matrix sig_c = (1.0 - a) * wtr.witness_rho + a * wtr.witness_sigma;
      consider(DensityMatrix::trusted(rho_c), DensityMatrix::trusted(sig_c));
    }
    const DensityMatrix mm = maximally_mixed(d);
    const ContractionEstimate wx2 = eta_x2_local(ch, mm, icfg);
    for (const double mu : kShrink) {
      const Matrix rho_c = mm.mat() + mu * (wx2.witness_rho - mm.mat());
      consider(DensityMatrix::trusted(rho_c), mm);
    }
  }

  // Local refinement: shrink the incumbent pair toward its sigma. Along a
  // fixed segment the f-ratio tends to the chi^2 ratio of the direction,
  // which operator convexity makes an upper envelope of the global ratio.
  for (int round = 0; round < 2 && best > 0.0; ++round) {
    const Matrix rho_b = best_rho;
    const Matrix sig_b = best_sigma;
    const DensityMatrix sig_dm = DensityMatrix::trusted(sig_b);
    for (const double mu : {0.3, 0.1, 0.03, 0.01}) {
      const Matrix rho_c = sig_b + mu * (rho_b - sig_b);
      consider(DensityMatrix::trusted(rho_c), sig_dm);
    }
  }

  ContractionEstimate est;
  est.value = clamp01(best);
  est.kind = EstimateKind::sampled_lower_bound;
  if (best_rho.size() > 0) {
    est.witness_rho = best_rho;
    est.witness_sigma = best_sigma;
  } else {
    est.witness_rho = Matrix::Zero(d, d);
    est.witness_sigma = Matrix::Zero(d, d);
  }
  return est;
}

DivergenceValue depol_pullback_divergence(const ConvexFunction& f, double p,
                                          const DensityMatrix& sigma,
                                          const DensityMatrix& rho,
                                          double rel_tol) {
  const QuantumChannel depol = depolarizing(p, sigma);
  return d_f_integral(f, apply_channel(depol, rho), sigma, rel_tol);
}

DivergenceValue f_mutual_information(const ConvexFunction& f, const CQState& cq,
                                     double rel_tol) {
  const std::size_t n = cq.probs.size();
  if (n == 0 || cq.conditionals.size() != n)
    throw std::invalid_argument("f_mutual_information: malformed cq state");
  const Eigen::Index db = cq.conditionals.front().dim();
  double total = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    if (cq.conditionals[u].dim() != db)
      throw std::invalid_argument("f_mutual_information: conditional dims differ");
    if (cq.probs[u] < -1e-12)
      throw std::invalid_argument("f_mutual_information: negative probability");
    total += std::max(cq.probs[u], 0.0);
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("f_mutual_information: probabilities must sum to 1");

  Matrix bar = Matrix::Zero(db, db);
  for (std::size_t u = 0; u < n; ++u) {
    const double pu = std::max(cq.probs[u], 0.0);
    if (pu > 0.0) bar += pu * cq.conditionals[u].mat();
  }
  const DensityMatrix rho_bar = DensityMatrix::trusted((bar / total).eval());

  DivergenceValue out;
  for (std::size_t u = 0; u < n; ++u) {
    const double pu = std::max(cq.probs[u], 0.0);
    if (pu < 1e-15) continue;
    const DivergenceValue dv = d_f_integral(f, cq.conditionals[u], rho_bar, rel_tol);
    if (!std::isfinite(dv.value)) {
      out.value = kInf;
      out.abs_error = 0.0;
      break;
    }
    out.value += pu * dv.value;
    out.abs_error += pu * dv.abs_error;
  }

  Matrix prior = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t u = 0; u < n; ++u)
    prior(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(u)) =
        std::max(cq.probs[u], 0.0);
  out.support_flag = classify_support(cq_embed(cq).mat(), tensor(prior, rho_bar.mat()));
  return out;
}

LessNoisyReport less_noisy_falsifier(const QuantumChannel& channel_m,
                                     const QuantumChannel& channel_n,
                                     const ConvexFunction& f, int n_samples,
                                     std::uint64_t seed) {
  if (channel_m.dim_in() != channel_n.dim_in())
    throw std::invalid_argument("less_noisy_falsifier: input dimensions differ");
  if (n_samples < 1) throw std::invalid_argument("less_noisy_falsifier: n_samples >= 1");
  const Eigen::Index d = channel_m.dim_in();

  LessNoisyReport report;
  report.witness_rho = Matrix::Zero(d, d);
  report.witness_sigma = Matrix::Zero(d, d);
  bool any_gap = false;
  for (int s = 0; s < n_samples; ++s) {
    const std::uint64_t su = static_cast<std::uint64_t>(s);
    const Eigen::Index rank_r = 1 + static_cast<Eigen::Index>(su % static_cast<std::uint64_t>(d));
    const Eigen::Index rank_s = 1 + static_cast<Eigen::Index>((su / static_cast<std::uint64_t>(d)) % static_cast<std::uint64_t>(d));
    const DensityMatrix rho = random_density(d, rank_r, stream_seed(seed, 2 * su + 1));
    const DensityMatrix sigma = random_density(d, rank_s, stream_seed(seed, 2 * su + 2));
    const DivergenceValue lhs =
        d_f_integral(f, apply_channel(channel_m, rho), apply_channel(channel_m, sigma));
    const DivergenceValue rhs =
        d_f_integral(f, apply_channel(channel_n, rho), apply_channel(channel_n, sigma));
    ++report.samples_checked;
    if (std::isinf(lhs.value)) continue;  // lhs = inf dominates everything
    double gap;
    bool violated;
    if (std::isinf(rhs.value)) {
      gap = -kInf;
      violated = true;
    } else {
      gap = lhs.value - rhs.value;
      const double margin = 10.0 * (lhs.abs_error + rhs.abs_error) + 1e-9;
      violated = gap + margin < 0.0;
    }
    if (!any_gap || gap < report.worst_gap) {
      report.worst_gap = gap;
      any_gap = true;
    }
    if (violated) {
      report.violation_found = true;
      report.witness_rho = rho.mat();
      report.witness_sigma = sigma.mat();
      break;
    }
  }
  return report;
}

}  // namespace qfdiv
