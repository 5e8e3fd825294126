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

#include "dppens/oracle.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dppens/elem_sym.hpp"
#include "dppens/errors.hpp"
#include "dppens/parallel.hpp"
#include "dppens/regressors.hpp"

namespace dppens {
namespace {

constexpr std::size_t kReductionChunks = 64;

std::vector<Index> mask_indices(std::uint64_t mask) {
  std::vector<Index> idx;
  for (Index i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) idx.push_back(i);
  }
  return idx;
}

// All k-subsets of [0, n) as bitmasks in increasing numeric order.
std::vector<std::uint64_t> combinations(Index n, Index k) {
  std::vector<std::uint64_t> out;
  if (k == 0) return {0};
  std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (mask < limit) {
    out.push_back(mask);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = mask & (~mask + 1);
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return out;
}

struct Partial {
  Eigen::MatrixXd sum;
  double mass = 0.0;
  double scalar = 0.0;
};

// Determinant and inverse of a principal submatrix by Cholesky.
struct Minor {
  double det;
  Eigen::MatrixXd inverse;
};

Minor principal_minor(const Eigen::MatrixXd& k, const std::vector<Index>& idx) {
  const Eigen::MatrixXd block = k(idx, idx);
  Eigen::LLT<Eigen::MatrixXd> llt(block);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("oracle: principal submatrix is not positive definite");
  }
  const double root = llt.matrixL().toDenseMatrix().diagonal().prod();
  return {root * root, llt.solve(Eigen::MatrixXd::Identity(block.rows(), block.cols()))};
}

double det_spd(const Eigen::MatrixXd& a) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw NumericalError("oracle: matrix is not positive definite");
  const double root = llt.matrixL().toDenseMatrix().diagonal().prod();
  return root * root;
}

// Sums fn(item, partial) over `count` items split into fixed chunks, then
// reduces the chunks in order.
template <typename F>
Partial chunked_sum(std::size_t count, Index n, unsigned threads, F&& fn) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min(count, kReductionChunks));
  std::vector<Partial> partials(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Partial p{Eigen::MatrixXd::Zero(n, n), 0.0, 0.0};
    const ChunkRange range = chunk_range(count, chunks, c);
    for (std::size_t i = range.begin; i < range.end; ++i) fn(i, p);
    partials[c] = std::move(p);
  });
  Partial total{Eigen::MatrixXd::Zero(n, n), 0.0, 0.0};
  for (const Partial& p : partials) {
    total.sum += p.sum;
    total.mass += p.mass;
    total.scalar += p.scalar;
  }
  return total;
}

void check_square(const GramMatrix& k, Index cap, const char* what) {
  if (k.size() < 1) throw InvalidArgument(std::string(what) + ": empty matrix");
  if (k.size() > cap) {
    throw InvalidArgument(std::string(what) + ": n = " + std::to_string(k.size()) +
                          " exceeds the enumeration cap " + std::to_string(cap));
  }
}

void check_subset_size(Index k, Index n) {
  if (k < 1 || k > n) throw InvalidArgument("subset size must satisfy 1 <= k <= n");
}

Eigen::MatrixXd scalar_matrix(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }

}  // namespace

std::string_view to_string(OracleMethod method) {
  return method == OracleMethod::kExhaustive ? "exhaustive" : "monte_carlo";
}

double IdentityReport::max_standardized_deviation() const {
  double worst = 0.0;
  for (Index i = 0; i < standard_errors.size(); ++i) {
    const double dev = std::abs(lhs(i) - rhs(i));
    if (standard_errors(i) > 0.0) {
      worst = std::max(worst, dev / standard_errors(i));
    } else if (dev > 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

IdentityReport make_report(Eigen::MatrixXd lhs, Eigen::MatrixXd rhs, OracleMethod method) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw InvalidArgument("make_report: lhs and rhs shapes differ");
  }
  IdentityReport r;
  r.abs_error = (lhs - rhs).cwiseAbs().maxCoeff();
  r.rel_error = (lhs - rhs).norm() / std::max(rhs.norm(), 1e-30);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.method = method;
  return r;
}

GramMatrix random_spd(Index n, Rng& rng, double min_eig, double max_eig) {
  if (n < 1) throw InvalidArgument("random_spd: n must be positive");
  if (!(min_eig > 0.0 && max_eig >= min_eig)) throw InvalidArgument("random_spd: bad eigenvalue range");
  Eigen::MatrixXd g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  Eigen::VectorXd d(n);
  const double lo = std::log(min_eig);
  const double hi = std::log(max_eig);
  for (Index i = 0; i < n; ++i) d(i) = std::exp(lo + (hi - lo) * rng.uniform());
  const Eigen::MatrixXd k = q * d.asDiagonal() * q.transpose();
  return GramMatrix::from_matrix(0.5 * (k + k.transpose()));
}

IdentityReport expect_dpp_exhaustive(const GramMatrix& k, double alpha, unsigned threads) {
  check_square(k, kMaxDppEnumeration, "expect_dpp_exhaustive");
  if (!(std::isfinite(alpha) && alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const Index n = k.size();
  const Eigen::MatrixXd& km = k.matrix();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const double normalizer = det_spd(identity + km / alpha);

  const std::size_t total = std::size_t{1} << n;
  Partial acc = chunked_sum(total, n, threads, [&](std::size_t i, Partial& p) {
    const std::uint64_t mask = i ^ (i >> 1);  // Gray-code order
    if (mask == 0) {
      p.mass += 1.0 / normalizer;
      return;
    }
    const std::vector<Index> idx = mask_indices(mask);
    const Minor minor = principal_minor(km, idx);
    const double prob =
        minor.det / std::pow(alpha, static_cast<double>(idx.size())) / normalizer;
    p.mass += prob;
    p.sum(idx, idx) += prob * minor.inverse;
  });

  const Eigen::MatrixXd rhs = (km + alpha * identity).llt().solve(identity);
  IdentityReport report = make_report(std::move(acc.sum), rhs);
  report.probability_mass = acc.mass;
  return report;
}

Eigen::MatrixXd kdpp_expected_inverse(const Spectrum& spectrum, Index k) {
  const Index n = spectrum.size();
  check_subset_size(k, n);
  const Eigen::VectorXd& lambda = spectrum.eigenvalues();
  const ElemSymTable table = elem_sym(lambda, k);
  Eigen::VectorXd weights(n);
  for (Index l = 0; l < n; ++l) {
    double extra = 0.0;  // e_k of n-1 values vanishes when k = n
    if (k <= n - 1) {
      const std::vector<ScaledReal> loo = table.leave_one_out(l, k);
      extra = ratio(loo[static_cast<std::size_t>(k)], loo[static_cast<std::size_t>(k - 1)]);
    }
    weights(l) = 1.0 / (lambda(l) + extra);
  }
  const Eigen::MatrixXd& v = spectrum.eigenvectors();
  const Eigen::MatrixXd m = v * weights.asDiagonal() * v.transpose();
  return 0.5 * (m + m.transpose());
}

IdentityReport expect_kdpp_exhaustive(const GramMatrix& k, Index subset_size, unsigned threads) {
  check_square(k, kMaxKdppEnumeration, "expect_kdpp_exhaustive");
  const Index n = k.size();
  check_subset_size(subset_size, n);
  const Spectrum spectrum = eigendecompose(k);
  const double ek = elem_sym(spectrum.eigenvalues(), subset_size).e(subset_size);
  const Eigen::MatrixXd& km = k.matrix();

  const std::vector<std::uint64_t> masks = combinations(n, subset_size);
  Partial acc = chunked_sum(masks.size(), n, threads, [&](std::size_t i, Partial& p) {
    const std::vector<Index> idx = mask_indices(masks[i]);
    const Minor minor = principal_minor(km, idx);
    const double prob = minor.det / ek;
    p.mass += prob;
    p.sum(idx, idx) += prob * minor.inverse;
  });

  IdentityReport report = make_report(std::move(acc.sum), kdpp_expected_inverse(spectrum, subset_size));
  report.probability_mass = acc.mass;
  return report;
}

Eigen::VectorXd charpoly_elem_sym(const Eigen::Ref<const Eigen::MatrixXd>& a) {
  const Index n = a.rows();
  if (n != a.cols() || n < 1) throw InvalidArgument("charpoly_elem_sym: matrix must be square");
  Eigen::MatrixXd h = a;
  if (n > 2) h = Eigen::HessenbergDecomposition<Eigen::MatrixXd>(a).matrixH();

  // p[i] holds det(t I - H_i) for the leading i x i block, coefficients in
  // ascending powers of t.
  std::vector<Eigen::VectorXd> p(static_cast<std::size_t>(n) + 1);
  p[0] = Eigen::VectorXd::Ones(1);
  for (Index i = 1; i <= n; ++i) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(i + 1);
    const Eigen::VectorXd& prev = p[static_cast<std::size_t>(i - 1)];
    next.tail(i) += prev;                      // t * p_{i-1}
    next.head(i) -= h(i - 1, i - 1) * prev;    // -h_ii * p_{i-1}
    double subdiag = 1.0;
    for (Index m = 1; m <= i - 1; ++m) {
      subdiag *= h(i - m, i - m - 1);
      const Eigen::VectorXd& lower = p[static_cast<std::size_t>(i - m - 1)];
      next.head(lower.size()) -= h(i - 1 - m, i - 1) * subdiag * lower;
    }
    p[static_cast<std::size_t>(i)] = std::move(next);
  }

  const Eigen::VectorXd& coeffs = p[static_cast<std::size_t>(n)];
  Eigen::VectorXd e(n + 1);
  for (Index r = 0; r <= n; ++r) e(r) = ((r % 2 == 0) ? 1.0 : -1.0) * coeffs(n - r);
  return e;
}

Lemma2Report lemma2_check(const GramMatrix& k, Index subset_size,
                          const Eigen::Ref<const Eigen::VectorXd>& u,
                          const Eigen::Ref<const Eigen::VectorXd>& w, unsigned threads) {
  check_square(k, kMaxKdppEnumeration, "lemma2_check");
  const Index n = k.size();
  check_subset_size(subset_size, n);
  if (u.size() != n || w.size() != n) throw InvalidArgument("lemma2_check: u and w must have length n");
  const Eigen::MatrixXd& km = k.matrix();
  const Spectrum spectrum = eigendecompose(k);
  const double ek_spectral = elem_sym(spectrum.eigenvalues(), subset_size).e(subset_size);

  const std::vector<std::uint64_t> masks = combinations(n, subset_size);
  Partial acc = chunked_sum(masks.size(), 0, threads, [&](std::size_t i, Partial& p) {
    const std::vector<Index> idx = mask_indices(masks[i]);
    const Minor minor = principal_minor(km, idx);
    const double prob = minor.det / ek_spectral;
    p.mass += prob;
    p.scalar += prob * u(idx).dot(minor.inverse * w(idx));
  });

  const double ek = charpoly_elem_sym(km)(subset_size);
  const double ek_updated = charpoly_elem_sym(km - w * u.transpose())(subset_size);
  const double formula = (ek - ek_updated) / ek;
  const double spectral = u.dot(kdpp_expected_inverse(spectrum, subset_size) * w);

  Lemma2Report report;
  report.enumeration = make_report(scalar_matrix(acc.scalar), scalar_matrix(formula));
  report.enumeration.probability_mass = acc.mass;
  report.spectral = make_report(scalar_matrix(spectral), scalar_matrix(formula));
  return report;
}

PsdGapReport prop5_bound_check(const GramMatrix& k, Index subset_size, unsigned threads,
                               double tolerance) {
  PsdGapReport report;
  report.tolerance = tolerance;
  report.expectation = expect_kdpp_exhaustive(k, subset_size, threads);
  const Spectrum spectrum = eigendecompose(k);
  const Eigen::VectorXd& lambda = spectrum.eigenvalues();
  const Index n = spectrum.size();
  report.alpha = lambda.tail(n - subset_size + 1).sum();
  const double alpha = report.alpha;
  report.bound = spectrum.apply([alpha](double l) { return 1.0 / (l + alpha); });
  report.bound = 0.5 * (report.bound + report.bound.transpose()).eval();
  const Eigen::MatrixXd gap = report.expectation.lhs - report.bound;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (gap + gap.transpose()),
                                                        Eigen::EigenvaluesOnly);
  report.lambda_min_gap = solver.eigenvalues()(0);
  report.passed = report.lambda_min_gap >= -tolerance;
  return report;
}

ScalarBoundReport lemma6_check(std::span<const double> sigma, Index k, Index l,
                               double relative_slack) {
  const auto n = static_cast<Index>(sigma.size());
  if (!(k >= l && l > 0 && k + 1 <= n)) {
    throw InvalidArgument("lemma6_check: need k >= l > 0 and k + 1 <= n");
  }
  for (Index i = 0; i < n; ++i) {
    if (!(sigma[static_cast<std::size_t>(i)] >= 0.0)) throw InvalidArgument("lemma6_check: negative entry");
    if (i > 0 && sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(i - 1)]) {
      throw InvalidArgument("lemma6_check: entries must be sorted in descending order");
    }
  }
  // Coefficients of prod_i (1 + s_i t).
  std::vector<double> coeff(static_cast<std::size_t>(n) + 1, 0.0);
  coeff[0] = 1.0;
  for (Index i = 0; i < n; ++i) {
    for (Index r = i + 1; r >= 1; --r) {
      coeff[static_cast<std::size_t>(r)] += sigma[static_cast<std::size_t>(i)] * coeff[static_cast<std::size_t>(r - 1)];
    }
  }
  ScalarBoundReport report;
  double tail = 0.0;
  for (Index i = l; i < n; ++i) tail += sigma[static_cast<std::size_t>(i)];
  report.rhs = tail / static_cast<double>(k - l + 1);
  const double ek = coeff[static_cast<std::size_t>(k)];
  report.lhs = ek > 0.0 ? coeff[static_cast<std::size_t>(k + 1)] / ek : 0.0;
  report.passed = report.lhs <= report.rhs * (1.0 + relative_slack);
  return report;
}

ScalarBoundReport remark_bound_check(std::span<const double> eigenvalues, Index k,
                                     double relative_slack) {
  const auto n = static_cast<Index>(eigenvalues.size());
  if (n < 2) throw InvalidArgument("remark_bound_check: need n >= 2");
  if (k < 1 || k > n) throw InvalidArgument("remark_bound_check: need 1 <= k <= n");
  for (Index i = 1; i < n; ++i) {
    if (eigenvalues[static_cast<std::size_t>(i)] > eigenvalues[static_cast<std::size_t>(i - 1)]) {
      throw InvalidArgument("remark_bound_check: eigenvalues must be descending");
    }
  }
  const double lambda_1 = eigenvalues[0];
  const double lambda_nm1 = eigenvalues[static_cast<std::size_t>(n - 2)];

  ScalarBoundReport report;
  if (k <= n - 1) {
    const ElemSymTable table = elem_sym(eigenvalues.first(static_cast<std::size_t>(n - 1)), k);
    report.lhs = ratio(table.e_scaled(k), table.e_scaled(k - 1));
  }
  report.rhs = static_cast<double>(n - k) / static_cast<double>(k) * lambda_nm1 *
               std::pow(lambda_nm1 / lambda_1, static_cast<double>(k - 1));
  report.passed = report.rhs >= 0.0 && report.lhs >= report.rhs * (1.0 - relative_slack);
  return report;
}

ScalarBoundReport remark_bound_check(const Spectrum& spectrum, Index k, double relative_slack) {
  const Eigen::VectorXd& lambda = spectrum.eigenvalues();
  return remark_bound_check(
      std::span<const double>(lambda.data(), static_cast<std::size_t>(lambda.size())), k,
      relative_slack);
}

IdentityReport expectation_mc(const GramMatrix& k, const Eigen::Ref<const Eigen::MatrixXd>& points,
                              const Eigen::Ref<const Eigen::VectorXd>& y,
                              const SamplerConfig& sampler, std::size_t draws,
                              const Eigen::Ref<const Eigen::MatrixXd>& test_points,
                              unsigned threads) {
  if (draws < 1) throw InvalidArgument("expectation_mc: draws must be >= 1");
  if (sampler.scheme != Scheme::kDpp && sampler.scheme != Scheme::kKdpp) {
    throw InvalidArgument("expectation_mc: closed form known for dpp and kdpp only");
  }
  if (!k.kernel()) throw InvalidArgument("expectation_mc: Gram matrix must come from gram()");
  const auto spectrum = std::make_shared<const Spectrum>(eigendecompose(k));
  const SubsetSampler subset_sampler(spectrum, k.size(), sampler);

  Eigen::VectorXd reference;
  if (sampler.scheme == Scheme::kDpp) {
    reference = fit_krr(k, points, y, sampler.alpha).predict(test_points);
  } else {
    const Eigen::VectorXd weights = kdpp_expected_inverse(*spectrum, sampler.k) * y;
    reference = KernelExpansion(points, weights, *k.kernel()).predict(test_points);
  }

  // Per-chunk Welford accumulators merged in chunk order.
  struct Moments {
    double count = 0.0;
    Eigen::VectorXd mean;
    Eigen::VectorXd m2;
  };
  const Index t = test_points.rows();
  const std::size_t chunks = std::min(draws, kReductionChunks);
  std::vector<Moments> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Moments m{0.0, Eigen::VectorXd::Zero(t), Eigen::VectorXd::Zero(t)};
    const ChunkRange range = chunk_range(draws, chunks, c);
    for (std::size_t d = range.begin; d < range.end; ++d) {
      Rng rng = Rng::stream(sampler.seed, {static_cast<std::uint64_t>(d)});
      const Subset subset = subset_sampler.draw(rng);
      const Eigen::VectorXd pred = fit_ridgeless(k, points, y, subset, 0.0).predict(test_points);
      m.count += 1.0;
      const Eigen::VectorXd delta = pred - m.mean;
      m.mean += delta / m.count;
      m.m2 += delta.cwiseProduct(pred - m.mean);
    }
    partial[c] = std::move(m);
  });

  Moments total{0.0, Eigen::VectorXd::Zero(t), Eigen::VectorXd::Zero(t)};
  for (const Moments& m : partial) {
    const double combined = total.count + m.count;
    const Eigen::VectorXd delta = m.mean - total.mean;
    total.mean += delta * (m.count / combined);
    total.m2 += m.m2 + delta.cwiseAbs2() * (total.count * m.count / combined);
    total.count = combined;
  }

  IdentityReport report = make_report(total.mean, reference, OracleMethod::kMonteCarlo);
  report.draws = draws;
  report.probability_mass = 1.0;
  const double n = static_cast<double>(draws);
  report.standard_errors =
      draws > 1 ? (total.m2 / (n - 1.0) / n).cwiseSqrt().eval() : Eigen::VectorXd::Zero(t).eval();
  return report;
}

}  // namespace dppens
