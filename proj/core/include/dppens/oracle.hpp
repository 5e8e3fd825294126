// Copyright 2026 The dppens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPPENS_ORACLE_HPP
#define DPPENS_ORACLE_HPP

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <string_view>

#include "dppens/kernel.hpp"
#include "dppens/random.hpp"
#include "dppens/samplers.hpp"
#include "dppens/spectrum.hpp"

// Brute-force verifiers for the implicit-regularization identities. Every
// "lhs" is computed by enumerating subsets (or by Monte Carlo over sampled
// subsets); every "rhs" comes from a closed form. The two routes share no
// code beyond dense factorizations.

namespace dppens {

inline constexpr Index kMaxDppEnumeration = 12;
inline constexpr Index kMaxKdppEnumeration = 14;

enum class OracleMethod { kExhaustive, kMonteCarlo };
std::string_view to_string(OracleMethod method);

struct IdentityReport {
  Eigen::MatrixXd lhs;
  Eigen::MatrixXd rhs;
  double abs_error = 0.0;  // max |lhs - rhs|
  double rel_error = 0.0;  // ||lhs - rhs||_F / max(||rhs||_F, 1e-30)
  OracleMethod method = OracleMethod::kExhaustive;
  std::size_t draws = 0;
  /// Total enumerated probability; should be 1.
  double probability_mass = 0.0;
  /// Monte Carlo only: standard error of each entry of lhs (column vector).
  Eigen::VectorXd standard_errors;

  /// Monte Carlo only: max_i |lhs_i - rhs_i| / se_i.
  double max_standardized_deviation() const;
};

IdentityReport make_report(Eigen::MatrixXd lhs, Eigen::MatrixXd rhs,
                           OracleMethod method = OracleMethod::kExhaustive);

/// Random symmetric positive-definite matrix Q diag(d) Q^T with Q Haar-ish
/// orthogonal and d log-uniform on [min_eig, max_eig]. Exactly symmetric.
GramMatrix random_spd(Index n, Rng& rng, double min_eig = 0.1, double max_eig = 10.0);

/// E[C K_CC^{-1} C^T] over C ~ DPP(K/alpha), by enumerating all 2^n subsets
/// (empty set contributes zero), against (K + alpha I)^{-1}.
IdentityReport expect_dpp_exhaustive(const GramMatrix& k, double alpha,
                                     unsigned threads = 1);

/// Spectral form of the kDPP expectation:
/// sum_l v_l v_l^T / (lambda_l + e_k(lam^_l) / e_{k-1}(lam^_l)).
Eigen::MatrixXd kdpp_expected_inverse(const Spectrum& spectrum, Index k);

/// E[C K_CC^{-1} C^T] over C ~ kDPP(K) by enumerating all k-subsets,
/// against kdpp_expected_inverse.
IdentityReport expect_kdpp_exhaustive(const GramMatrix& k, Index subset_size,
                                      unsigned threads = 1);

/// e_0..e_n of an arbitrary square matrix, read off the characteristic
/// polynomial det(tI - A) = sum_r (-1)^r e_r t^{n-r}, computed from the
/// Hessenberg form of A.
Eigen::VectorXd charpoly_elem_sym(const Eigen::Ref<const Eigen::MatrixXd>& a);

struct Lemma2Report {
  /// Enumerated E[u^T C K_CC^{-1} C^T w] (lhs) vs the determinant ratio
  /// (e_k(K) - e_k(K - w u^T)) / e_k(K) (rhs).
  IdentityReport enumeration;
  /// u^T (spectral kDPP matrix) w (lhs) vs the determinant ratio (rhs).
  IdentityReport spectral;
};

Lemma2Report lemma2_check(const GramMatrix& k, Index subset_size,
                          const Eigen::Ref<const Eigen::VectorXd>& u,
                          const Eigen::Ref<const Eigen::VectorXd>& w,
                          unsigned threads = 1);

struct PsdGapReport {
  double lambda_min_gap = 0.0;  // smallest eigenvalue of lhs - bound
  double alpha = 0.0;           // sum_{i >= k} lambda_i (1-based)
  double tolerance = 1e-8;
  bool passed = false;
  IdentityReport expectation;   // enumerated kDPP expectation (lhs)
  Eigen::MatrixXd bound;
};

/// Checks E[C K_CC^{-1} C^T] - sum_l v_l v_l^T / (lambda_l + alpha) is PSD
/// within `tolerance`, with alpha the tail sum of eigenvalues from index k.
PsdGapReport prop5_bound_check(const GramMatrix& k, Index subset_size,
                               unsigned threads = 1, double tolerance = 1e-8);

struct ScalarBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = false;
};

/// e_{k+1}(s) / e_k(s) <= (1 / (k - l + 1)) sum_{i=l+1}^n s_i for sorted
/// s_1 >= ... >= s_n >= 0 and k >= l > 0 (1-based). The e_r are evaluated
/// by expanding prod_i (1 + s_i t) directly. `relative_slack` loosens rhs.
ScalarBoundReport lemma6_check(std::span<const double> sigma, Index k, Index l,
                               double relative_slack = 1e-12);

/// Lower bound on the regularization term of the smallest eigenvalue:
/// e_k(lam^_n) / e_{k-1}(lam^_n) >= ((n-k)/k) lambda_{n-1} (lambda_{n-1}/lambda_1)^{k-1}.
/// Requires descending eigenvalues, n >= 2, 1 <= k <= n.
ScalarBoundReport remark_bound_check(std::span<const double> eigenvalues, Index k,
                                     double relative_slack = 1e-8);
ScalarBoundReport remark_bound_check(const Spectrum& spectrum, Index k,
                                     double relative_slack = 1e-8);

/// Monte Carlo mean of ridgeless predictions at `test_points` over subsets
/// drawn from DPP(K/alpha) (or kDPP(K)), against the closed-form expected
/// predictor: KRR with ridge alpha for DPP, the spectral kDPP matrix for kDPP.
/// Draw d uses Rng::stream(sampler.seed, {d}).
IdentityReport expectation_mc(const GramMatrix& k,
                              const Eigen::Ref<const Eigen::MatrixXd>& points,
                              const Eigen::Ref<const Eigen::VectorXd>& y,
                              const SamplerConfig& sampler, std::size_t draws,
                              const Eigen::Ref<const Eigen::MatrixXd>& test_points,
                              unsigned threads = 1);

}  // namespace dppens

#endif  // DPPENS_ORACLE_HPP
