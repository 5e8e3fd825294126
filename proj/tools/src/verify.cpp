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

#include "dppens_cli/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "dppens/dataset.hpp"
#include "dppens/elem_sym.hpp"
#include "dppens/errors.hpp"
#include "dppens/oracle.hpp"
#include "dppens/parallel.hpp"
#include "dppens/random.hpp"
#include "dppens/spectrum.hpp"

namespace dppens::cli {
namespace {

// Stream tags so that suites never share random instances.
enum : std::uint64_t {
  kTagThm1 = 1,
  kTagCor4,
  kTagLemma2,
  kTagProp5,
  kTagLemma6,
  kTagRemark,
  kTagEq2,
  kTagLaws,
  kTagLawsKdpp,
  kTagLawsDpp,
};

constexpr std::size_t kDrawChunks = 64;

Json matrix_json(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

std::vector<Index> range(Index lo, Index hi) {
  std::vector<Index> out;
  for (Index i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

template <typename T>
std::vector<T> or_default(const std::vector<T>& given, std::vector<T> fallback) {
  return given.empty() ? fallback : given;
}

GramMatrix instance_matrix(std::uint64_t seed, std::uint64_t tag, Index n, Index s) {
  Rng rng = Rng::stream(seed, {tag, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)});
  return random_spd(n, rng);
}

Check make_check(std::string name, Json instance, double error, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.instance = std::move(instance);
  c.error = error;
  c.tolerance = tolerance;
  c.passed = std::isfinite(error) && error <= tolerance;
  return c;
}

double lu_det(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
}

std::vector<Index> mask_indices(std::uint64_t mask) {
  std::vector<Index> idx;
  for (Index i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) idx.push_back(i);
  }
  return idx;
}

using Law = std::map<std::uint64_t, double>;

double total_variation(const Law& p, const Law& q) {
  double tv = 0.0;
  for (const auto& [m, pm] : p) {
    const auto it = q.find(m);
    tv += std::abs(pm - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [m, qm] : q) {
    if (!p.count(m)) tv += qm;
  }
  return 0.5 * tv;
}

template <typename Draw>
Law empirical_law(std::size_t draws, unsigned threads, Draw&& draw) {
  std::vector<std::map<std::uint64_t, std::size_t>> counts(kDrawChunks);
  parallel_for(kDrawChunks, threads, [&](std::size_t c) {
    const ChunkRange r = chunk_range(draws, kDrawChunks, c);
    for (std::size_t d = r.begin; d < r.end; ++d) {
      std::uint64_t mask = 0;
      for (Index i : draw(static_cast<std::uint64_t>(d))) mask |= std::uint64_t{1} << i;
      ++counts[c][mask];
    }
  });
  Law law;
  for (const auto& chunk : counts) {
    for (const auto& [m, cnt] : chunk) law[m] += static_cast<double>(cnt);
  }
  for (auto& [m, f] : law) f /= static_cast<double>(draws);
  return law;
}

SuiteResult run_thm1(const VerifyOptions& o) {
  SuiteResult res{"thm1", {}};
  for (Index n : or_default(o.n, range(2, 8))) {
    for (Index s = 0; s < o.seeds; ++s) {
      const GramMatrix k = instance_matrix(o.seed, kTagThm1, n, s);
      for (double alpha : or_default(o.alpha, {0.01, 1.0, 100.0})) {
        const IdentityReport r = expect_dpp_exhaustive(k, alpha, o.threads);
        const Json inst{{"seed", o.seed}, {"instance", s}, {"n", n}, {"alpha", alpha}};
        const Json replay{{"K", matrix_json(k.matrix())}, {"alpha", alpha}};
        Check c = make_check("thm1", inst, r.rel_error, 1e-9);
        c.replay = replay;
        res.checks.push_back(std::move(c));
        Check mass = make_check("thm1.mass", inst, std::abs(r.probability_mass - 1.0), 1e-10);
        mass.replay = replay;
        res.checks.push_back(std::move(mass));
      }
    }
  }
  return res;
}

SuiteResult run_cor4(const VerifyOptions& o) {
  SuiteResult res{"cor4", {}};
  for (Index n : or_default(o.n, range(2, 8))) {
    for (Index s = 0; s < o.seeds; ++s) {
      const GramMatrix k = instance_matrix(o.seed, kTagCor4, n, s);
      for (Index size : or_default(o.k, range(1, n))) {
        if (size > n) continue;
        const IdentityReport r = expect_kdpp_exhaustive(k, size, o.threads);
        const Json inst{{"seed", o.seed}, {"instance", s}, {"n", n}, {"k", size}};
        const Json replay{{"K", matrix_json(k.matrix())}, {"k", size}};
        Check c = make_check("cor4", inst, r.rel_error, 1e-8);
        c.replay = replay;
        res.checks.push_back(std::move(c));
        Check mass = make_check("cor4.mass", inst, std::abs(r.probability_mass - 1.0), 1e-10);
        mass.replay = replay;
        res.checks.push_back(std::move(mass));
      }
    }
  }
  return res;
}

SuiteResult run_lemma2(const VerifyOptions& o) {
  SuiteResult res{"lemma2", {}};
  for (Index n : or_default(o.n, range(3, 6))) {
    for (Index s = 0; s < o.seeds; ++s) {
      const GramMatrix k = instance_matrix(o.seed, kTagLemma2, n, s);
      Rng rng = Rng::stream(o.seed, {kTagLemma2, static_cast<std::uint64_t>(n),
                                     static_cast<std::uint64_t>(s), 1});
      Eigen::VectorXd u(n), w(n);
      for (Index i = 0; i < n; ++i) u(i) = rng.normal();
      for (Index i = 0; i < n; ++i) w(i) = rng.normal();
      for (Index size : or_default(o.k, range(1, n))) {
        if (size > n) continue;
        const Lemma2Report r = lemma2_check(k, size, u, w, o.threads);
        const Json inst{{"seed", o.seed}, {"instance", s}, {"n", n}, {"k", size}};
        const Json replay{{"K", matrix_json(k.matrix())},
                          {"k", size},
                          {"u", vector_json(u)},
                          {"w", vector_json(w)}};
        Check e = make_check("lemma2.enumeration", inst, r.enumeration.rel_error, 1e-8);
        e.replay = replay;
        res.checks.push_back(std::move(e));
        Check sp = make_check("lemma2.spectral", inst, r.spectral.rel_error, 1e-8);
        sp.replay = replay;
        res.checks.push_back(std::move(sp));
      }
    }
  }
  return res;
}

std::vector<double> sorted_random_vector(Rng& rng, Index n, double log_sd) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = std::exp(log_sd * rng.normal());
  std::sort(v.rbegin(), v.rend());
  return v;
}

SuiteResult run_prop5(const VerifyOptions& o) {
  SuiteResult res{"prop5", {}};
  for (Index n : or_default(o.n, range(2, 8))) {
    for (Index s = 0; s < o.seeds; ++s) {
      const GramMatrix k = instance_matrix(o.seed, kTagProp5, n, s);
      for (Index size : or_default(o.k, range(1, n))) {
        if (size > n) continue;
        const PsdGapReport r = prop5_bound_check(k, size, o.threads);
        Check c = make_check("prop5.gap",
                             {{"seed", o.seed}, {"instance", s}, {"n", n}, {"k", size},
                              {"alpha", r.alpha}},
                             -r.lambda_min_gap, r.tolerance);
        c.replay = {{"K", matrix_json(k.matrix())}, {"k", size}};
        res.checks.push_back(std::move(c));
      }
    }
  }
  // Scalar inequality on sorted vectors; the instance count is fixed at 100.
  const Index len = 10;
  for (Index s = 0; s < 100; ++s) {
    Rng rng = Rng::stream(o.seed, {kTagLemma6, static_cast<std::uint64_t>(s)});
    const std::vector<double> sigma = sorted_random_vector(rng, len, 3.0);
    for (Index size = 1; size + 1 <= len; ++size) {
      const ScalarBoundReport r = lemma6_check(sigma, size, size, 0.0);
      Check c = make_check("lemma6", {{"seed", o.seed}, {"instance", s}, {"n", len}, {"k", size}},
                           (r.lhs - r.rhs) / r.rhs, 1e-12);
      c.replay = {{"sigma", sigma}, {"k", size}, {"l", size}};
      res.checks.push_back(std::move(c));
    }
  }
  return res;
}

SuiteResult run_remark(const VerifyOptions& o) {
  SuiteResult res{"remark", {}};
  const Index n = o.n.empty() ? 10 : o.n.front();
  if (n < 2) throw InvalidArgument("remark suite needs n >= 2");
  for (Index s = 0; s < 100; ++s) {
    Rng rng = Rng::stream(o.seed, {kTagRemark, static_cast<std::uint64_t>(s)});
    const std::vector<double> lam = sorted_random_vector(rng, n, 2.0);
    for (Index size = 1; size <= n; ++size) {
      const ScalarBoundReport r = remark_bound_check(lam, size, 0.0);
      const double error = r.rhs > 0.0 ? (r.rhs - r.lhs) / r.rhs : r.rhs - r.lhs;
      Check c = make_check("remark", {{"seed", o.seed}, {"instance", s}, {"n", n}, {"k", size}},
                           error, 1e-8);
      c.replay = {{"eigenvalues", lam}, {"k", size}};
      res.checks.push_back(std::move(c));
    }
  }
  for (double value : {0.5, 1.0, 7.25}) {
    const std::vector<double> lam(static_cast<std::size_t>(n), value);
    for (Index size = 1; size < n; ++size) {
      const ScalarBoundReport r = remark_bound_check(lam, size, 0.0);
      const double want = value * static_cast<double>(n - size) / static_cast<double>(size);
      const double error = std::max(std::abs(r.lhs - want), std::abs(r.rhs - want)) / want;
      Check c = make_check("remark.constant", {{"n", n}, {"k", size}, {"alpha", value}}, error, 1e-10);
      c.replay = {{"eigenvalues", lam}, {"k", size}};
      res.checks.push_back(std::move(c));
    }
  }
  return res;
}

double rms(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return std::sqrt(v.squaredNorm() / static_cast<double>(v.size()));
}

SuiteResult run_eq2(const VerifyOptions& o) {
  SuiteResult res{"eq2-mc", {}};
  const Index n = o.n.empty() ? 20 : o.n.front();
  const double alpha = o.alpha.empty() ? 1.0 : o.alpha.front();
  std::vector<std::size_t> draws = or_default(o.draws, {1000, 10000, 100000});
  std::sort(draws.begin(), draws.end());
  constexpr Index kTestPoints = 10;

  Dataset ds = make_synthetic_regression(n + kTestPoints, 5, o.seed);
  std::vector<Index> train(static_cast<std::size_t>(n));
  std::iota(train.begin(), train.end(), Index{0});
  standardize(ds, train);
  const Eigen::MatrixXd x = ds.features.topRows(n);
  const Eigen::VectorXd y = ds.label_vector().head(n);
  const Eigen::MatrixXd xt = ds.features.bottomRows(kTestPoints);
  const GramMatrix k = gram(x, {KernelFamily::kGaussian, 1.0});
  const Json replay{{"points", matrix_json(x)},
                    {"labels", vector_json(y)},
                    {"test_points", matrix_json(xt)},
                    {"alpha", alpha},
                    {"bandwidth", 1.0}};

  std::vector<double> dev, se;
  for (std::size_t d : draws) {
    const IdentityReport r =
        expectation_mc(k, x, y, {Scheme::kDpp, 0, alpha, o.seed}, d, xt, o.threads);
    dev.push_back(rms(r.lhs.col(0) - r.rhs.col(0)));
    se.push_back(rms(r.standard_errors));
    Check c = make_check("eq2-mc.max_z",
                         {{"seed", o.seed}, {"n", n}, {"alpha", alpha}, {"draws", d},
                          {"rms_deviation", dev.back()}, {"rms_standard_error", se.back()}},
                         r.max_standardized_deviation(), 4.0);
    c.replay = replay;
    res.checks.push_back(std::move(c));
  }
  // Deviation shrinks with the number of draws: each step may not grow by
  // more than two standard errors, and the last is below the first.
  for (std::size_t j = 1; j < draws.size(); ++j) {
    Check c = make_check("eq2-mc.monotone",
                         {{"seed", o.seed}, {"n", n}, {"alpha", alpha}, {"draws", draws[j]},
                          {"previous_draws", draws[j - 1]}},
                         dev[j] - dev[j - 1] - 2.0 * se[j], 0.0);
    c.replay = replay;
    res.checks.push_back(std::move(c));
  }
  if (draws.size() > 1) {
    Check c = make_check("eq2-mc.decrease",
                         {{"seed", o.seed}, {"n", n}, {"alpha", alpha}, {"draws", draws.back()}},
                         dev.back() - dev.front(), 0.0);
    c.replay = replay;
    res.checks.push_back(std::move(c));
  }
  return res;
}

SuiteResult run_laws(const VerifyOptions& o) {
  SuiteResult res{"sampler-laws", {}};
  const Index n = o.n.empty() ? 6 : o.n.front();
  const Index size = o.k.empty() ? 3 : o.k.front();
  const double alpha = o.alpha.empty() ? 1.0 : o.alpha.front();
  const std::size_t draws = o.draws.empty() ? 200000 : o.draws.front();
  if (n > kMaxKdppEnumeration) {
    throw InvalidArgument("sampler-laws enumerates all subsets; n must be <= " +
                          std::to_string(kMaxKdppEnumeration));
  }
  const GramMatrix k = instance_matrix(o.seed, kTagLaws, n, 0);
  const Spectrum spectrum = eigendecompose(k);
  const ElemSymTable esym = elem_sym(spectrum.eigenvalues(), size);
  const Eigen::MatrixXd& km = k.matrix();

  Law kdpp_exact, dpp_exact;
  double kdpp_total = 0.0;
  const double dpp_total = lu_det(Eigen::MatrixXd::Identity(n, n) + km / alpha);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto idx = mask_indices(mask);
    const double det = lu_det(km(idx, idx));
    dpp_exact[mask] = det * std::pow(alpha, -static_cast<double>(idx.size())) / dpp_total;
    if (static_cast<Index>(idx.size()) == size) {
      kdpp_exact[mask] = det;
      kdpp_total += det;
    }
  }
  for (auto& [m, p] : kdpp_exact) p /= kdpp_total;

  const Law kdpp_emp = empirical_law(draws, o.threads, [&](std::uint64_t d) {
    Rng rng = Rng::stream(o.seed, {kTagLawsKdpp, d});
    return sample_kdpp(spectrum, esym, size, rng);
  });
  const Law dpp_emp = empirical_law(draws, o.threads, [&](std::uint64_t d) {
    Rng rng = Rng::stream(o.seed, {kTagLawsDpp, d});
    return sample_dpp(spectrum, alpha, rng);
  });

  const Json replay{{"K", matrix_json(km)}, {"k", size}, {"alpha", alpha}};
  const Json inst{{"seed", o.seed}, {"n", n}, {"k", size}, {"alpha", alpha}, {"draws", draws}};
  Check tv_k = make_check("sampler-laws.kdpp_tv", inst, total_variation(kdpp_emp, kdpp_exact), 0.02);
  tv_k.replay = replay;
  res.checks.push_back(std::move(tv_k));
  Check tv_d = make_check("sampler-laws.dpp_tv", inst, total_variation(dpp_emp, dpp_exact), 0.02);
  tv_d.replay = replay;
  res.checks.push_back(std::move(tv_d));

  const Eigen::VectorXd p = ridge_leverage_scores(spectrum, alpha);
  Eigen::VectorXd freq = Eigen::VectorXd::Zero(n);
  for (const auto& [mask, f] : dpp_emp) {
    for (Index i : mask_indices(mask)) freq(i) += f;
  }
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double band =
        3.0 * std::sqrt(p(i) * (1.0 - p(i)) / static_cast<double>(draws)) + 1e-3;
    worst = std::max(worst, std::abs(freq(i) - p(i)) / band);
  }
  Check inc = make_check("sampler-laws.dpp_inclusion", inst, worst, 1.0);
  inc.replay = replay;
  res.checks.push_back(std::move(inc));
  return res;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> kSuites{"thm1",   "cor4",   "lemma2",      "prop5",
                                                "remark", "eq2-mc", "sampler-laws"};
  return kSuites;
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* SuiteResult::worst() const {
  const Check* worst = nullptr;
  double worst_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& c : checks) {
    double ratio = c.tolerance > 0.0 ? c.error / c.tolerance : c.error;
    if (!std::isfinite(c.error)) ratio = std::numeric_limits<double>::infinity();
    if (!worst || ratio > worst_ratio) {
      worst = &c;
      worst_ratio = ratio;
    }
  }
  return worst;
}

SuiteResult run_verify(const VerifyOptions& options) {
  if (options.seeds < 1) throw InvalidArgument("--seeds must be positive");
  const std::string& s = options.suite;
  if (s == "thm1") return run_thm1(options);
  if (s == "cor4") return run_cor4(options);
  if (s == "lemma2") return run_lemma2(options);
  if (s == "prop5") return run_prop5(options);
  if (s == "remark") return run_remark(options);
  if (s == "eq2-mc") return run_eq2(options);
  if (s == "sampler-laws") return run_laws(options);
  throw InvalidArgument("unknown verify suite '" + s + "'");
}

Json to_json(const SuiteResult& result) {
  Json checks = Json::array();
  for (const auto& c : result.checks) {
    Json entry{{"check", c.name}};
    for (const auto& [key, value] : c.instance.items()) entry[key] = value;
    entry["error"] = c.error;
    entry["tolerance"] = c.tolerance;
    entry["passed"] = c.passed;
    checks.push_back(std::move(entry));
  }
  Json j{{"suite", result.suite},
         {"passed", result.passed()},
         {"n_checks", result.checks.size()},
         {"n_failed", std::count_if(result.checks.begin(), result.checks.end(),
                                    [](const Check& c) { return !c.passed; })}};
  if (const Check* w = result.worst()) {
    Json worst{{"check", w->name}, {"instance", w->instance}, {"error", w->error},
               {"tolerance", w->tolerance}};
    if (!w->replay.is_null()) worst["replay"] = w->replay;
    j["worst"] = std::move(worst);
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace dppens::cli
