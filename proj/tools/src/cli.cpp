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

#include "dppens_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dppens/dataset.hpp"
#include "dppens/elem_sym.hpp"
#include "dppens/errors.hpp"
#include "dppens/experiment.hpp"
#include "dppens/kernel.hpp"
#include "dppens/parallel.hpp"
#include "dppens/random.hpp"
#include "dppens/samplers.hpp"
#include "dppens/spectrum.hpp"
#include "dppens_cli/report_io.hpp"
#include "dppens_cli/verify.hpp"

namespace dppens::cli {
namespace {

constexpr std::uint64_t kSampleStream = 0x5a3b1e;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string output = "json";
  unsigned threads = 1;
  bool timing = false;
  std::string config;  // consumed before parsing; kept for --help
};

struct DataOptions {
  std::string input;
  Index synthetic = 0;
  Index synthetic_dims = 5;
  std::string label_column;
  std::vector<std::string> one_hot;
  std::vector<std::string> ordinal;
  std::string delimiter;
  Index subsample = 0;
  std::string kernel = "gaussian";
  double sigma = 1.0;
  std::string params;
  double jitter = 0.0;
  Index max_points = 5000;
};

struct SampleOptions {
  std::string scheme = "kdpp";
  Index k = 50;
  double alpha = 1.0;
  double rls_lambda = 1e-4;
  std::size_t draws = 1;
};

struct RlsOptions {
  std::optional<double> alpha;
  double rls_lambda = 1e-4;
};

struct EnsembleOptions {
  std::vector<std::string> schemes{"uniform", "rls", "kdpp"};
  Index k = 50;
  std::vector<Index> m{1, 5, 10, 15, 20};
  Index repeats = 10;
  double epsilon = 1e-12;
  double rls_lambda = 1e-4;
  double dpp_alpha = 1.0;
  double train_fraction = 0.5;
};

struct VerifyCliOptions {
  std::string suite;
  std::vector<Index> n;
  std::vector<Index> k;
  std::vector<double> alpha;
  Index seeds = 5;
  std::vector<std::size_t> draws;
};

// Raised for verification failures after the report has been written.
struct VerificationFailed {};

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--seed", c.seed, "Master random seed")->capture_default_str();
  sub->add_option("--output", c.output, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  sub->add_option("--config", c.config, "Flat key = value file; flags override it");
}

void add_data(CLI::App* sub, DataOptions& d) {
  sub->add_option("--input", d.input, "CSV/TSV file with a header row");
  sub->add_option("--synthetic", d.synthetic, "Generate N synthetic points instead of --input")
      ->check(CLI::PositiveNumber);
  sub->add_option("--synthetic-dims", d.synthetic_dims, "Feature count of synthetic data")
      ->check(CLI::Range(Index{3}, Index{1000}))
      ->capture_default_str();
  sub->add_option("--label-column", d.label_column, "Name of the label column");
  sub->add_option("--one-hot", d.one_hot, "Categorical columns to one-hot encode")->delimiter(',');
  sub->add_option("--ordinal", d.ordinal, "Categorical columns to encode by level rank")
      ->delimiter(',');
  sub->add_option("--delimiter", d.delimiter, "Field separator: one character or 'tab'");
  sub->add_option("--subsample", d.subsample, "Keep N random rows")->check(CLI::PositiveNumber);
  sub->add_option("--kernel", d.kernel, "Kernel family")
      ->check(CLI::IsMember({"gaussian", "laplace"}))
      ->capture_default_str();
  sub->add_option("--sigma", d.sigma, "Kernel bandwidth")->capture_default_str();
  sub->add_option("--params", d.params, "Dataset preset supplying sigma, k and RLS lambda")
      ->check(CLI::IsMember({"adult", "abalone", "wine-quality", "bike-sharing", "casp"}));
  sub->add_option("--jitter", d.jitter, "Diagonal jitter added to the Gram matrix")
      ->capture_default_str();
  sub->add_option("--max-points", d.max_points, "Cap on rows held in an n x n Gram matrix")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

bool given(const CLI::App* sub, const std::string& name) { return sub->count(name) > 0; }

void apply_preset(const CLI::App* sub, const DataOptions& d, Index* k, double* rls_lambda,
                  double* sigma) {
  if (d.params.empty()) return;
  const DatasetPreset& p = find_preset(d.params);
  if (!given(sub, "--sigma")) *sigma = p.sigma;
  if (k && !given(sub, "--k")) *k = p.k;
  if (rls_lambda && !given(sub, "--rls-lambda")) *rls_lambda = p.rls_lambda;
}

char parse_delimiter(const DataOptions& d) {
  if (d.delimiter.empty()) {
    return std::filesystem::path(d.input).extension() == ".tsv" ? '\t' : ',';
  }
  if (d.delimiter == "tab" || d.delimiter == "\\t") return '\t';
  if (d.delimiter.size() != 1) {
    throw InvalidArgument("--delimiter must be one character or 'tab', got '" + d.delimiter + "'");
  }
  return d.delimiter.front();
}

Dataset load_data(const DataOptions& d, bool need_labels, std::uint64_t seed) {
  if (d.input.empty() == (d.synthetic == 0)) {
    throw InvalidArgument("give exactly one of --input and --synthetic");
  }
  Dataset ds;
  if (d.synthetic > 0) {
    ds = make_synthetic_regression(d.synthetic, d.synthetic_dims, seed);
  } else {
    if (need_labels && d.label_column.empty()) {
      throw InvalidArgument("--label-column is required for this command");
    }
    CsvOptions opts;
    if (!d.label_column.empty()) opts.label_column = d.label_column;
    opts.delimiter = parse_delimiter(d);
    opts.one_hot = d.one_hot;
    opts.ordinal = d.ordinal;
    ds = load_csv(d.input, opts);
  }
  if (d.subsample > 0) ds = subsample(ds, d.subsample, seed);
  return ds;
}

void check_cap(const Dataset& ds, const DataOptions& d) {
  if (ds.rows() > d.max_points) {
    throw DataError("dataset has " + std::to_string(ds.rows()) + " rows, above the cap of " +
                    std::to_string(d.max_points) + " for an n x n Gram matrix; use --subsample");
  }
}

KernelSpec kernel_spec(const DataOptions& d) {
  KernelSpec spec{parse_kernel_family(d.kernel), d.sigma};
  spec.validate();
  return spec;
}

GramMatrix data_gram(const Dataset& ds, const DataOptions& d) {
  const GramMatrix k = gram(ds.features, kernel_spec(d));
  return d.jitter > 0.0 ? k.jittered(d.jitter) : k;
}

Json data_params(const DataOptions& d, const CommonOptions& c) {
  Json j{{"seed", c.seed}};
  if (d.synthetic > 0) {
    j["synthetic"] = d.synthetic;
    j["synthetic_dims"] = d.synthetic_dims;
  } else {
    j["input"] = std::filesystem::path(d.input).filename().string();
    j["label_column"] = d.label_column.empty() ? Json(nullptr) : Json(d.label_column);
    j["one_hot"] = d.one_hot;
    j["ordinal"] = d.ordinal;
  }
  j["subsample"] = d.subsample > 0 ? Json(d.subsample) : Json(nullptr);
  j["kernel"] = d.kernel;
  j["sigma"] = d.sigma;
  if (!d.params.empty()) j["params"] = d.params;
  j["jitter"] = d.jitter;
  return j;
}

Json envelope(const std::string& command, Json params) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}, {"parameters", std::move(params)}};
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int cmd_sample(const CommonOptions& c, const DataOptions& d, const SampleOptions& s,
               std::ostream& out) {
  Dataset ds = load_data(d, false, c.seed);
  check_cap(ds, d);
  standardize(ds);
  const Index n = ds.rows();
  const Scheme scheme = parse_scheme(s.scheme);
  SamplerConfig config{scheme, s.k, s.alpha, c.seed};
  if (scheme == Scheme::kRls) config.alpha = s.rls_lambda * static_cast<double>(n);
  config.validate(n);
  if (s.draws < 1) throw InvalidArgument("--draws must be positive");

  std::shared_ptr<const Spectrum> spectrum;
  if (scheme != Scheme::kUniform) {
    spectrum = std::make_shared<const Spectrum>(eigendecompose(data_gram(ds, d)));
  }
  const SubsetSampler sampler(spectrum, n, config);
  std::vector<Subset> subsets(s.draws);
  parallel_for(s.draws, c.threads, [&](std::size_t i) {
    Rng rng = Rng::stream(c.seed, {kSampleStream, static_cast<std::uint64_t>(i)});
    subsets[i] = sampler.draw(rng);
  });

  if (c.output == "csv") {
    out << "draw,size,indices\n";
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      out << i << ',' << subsets[i].size() << ',';
      for (Index t = 0; t < subsets[i].size(); ++t) out << (t ? " " : "") << subsets[i][t];
      out << '\n';
    }
    return kExitSuccess;
  }
  Json params = data_params(d, c);
  params["scheme"] = s.scheme;
  if (scheme != Scheme::kDpp) params["k"] = s.k;
  params["alpha"] = config.alpha;
  params["draws"] = s.draws;
  Json j = envelope("sample", std::move(params));
  j["n_points"] = n;
  Json draws = Json::array();
  for (const auto& sub : subsets) draws.push_back(sub.indices());
  j["subsets"] = std::move(draws);
  emit_json(out, j);
  return kExitSuccess;
}

int cmd_rls(const CommonOptions& c, const DataOptions& d, const RlsOptions& r, std::ostream& out) {
  Dataset ds = load_data(d, false, c.seed);
  check_cap(ds, d);
  standardize(ds);
  const Index n = ds.rows();
  const double alpha = r.alpha.value_or(r.rls_lambda * static_cast<double>(n));
  if (!(alpha > 0.0)) throw InvalidArgument("RLS regularization must be positive");
  const Spectrum spectrum = eigendecompose(data_gram(ds, d));
  const Eigen::VectorXd scores = ridge_leverage_scores(spectrum, alpha);

  if (c.output == "csv") {
    out << "index,score\n";
    for (Index i = 0; i < n; ++i) out << i << ',' << format_double(scores(i)) << '\n';
    return kExitSuccess;
  }
  Json params = data_params(d, c);
  params["alpha"] = alpha;
  Json j = envelope("rls", std::move(params));
  j["n_points"] = n;
  j["expected_dpp_size"] = scores.sum();
  j["scores"] = std::vector<double>(scores.data(), scores.data() + n);
  emit_json(out, j);
  return kExitSuccess;
}

ExperimentConfig experiment_config(const CommonOptions& c, const DataOptions& d,
                                   const EnsembleOptions& e) {
  ExperimentConfig config;
  config.schemes.clear();
  for (const auto& name : e.schemes) config.schemes.push_back(parse_scheme(name));
  config.k = e.k;
  config.m_list = e.m;
  config.repeats = e.repeats;
  config.seed = c.seed;
  config.epsilon = e.epsilon;
  config.rls_lambda = e.rls_lambda;
  config.dpp_alpha = e.dpp_alpha;
  config.pd_jitter = d.jitter;
  config.threads = c.threads;
  config.max_points = d.max_points;
  config.validate();
  return config;
}

Json ensemble_params(const CommonOptions& c, const DataOptions& d, const EnsembleOptions& e) {
  Json j = data_params(d, c);
  j["schemes"] = e.schemes;
  j["k"] = e.k;
  j["m"] = e.m;
  j["repeats"] = e.repeats;
  j["rls_lambda"] = e.rls_lambda;
  j["dpp_alpha"] = e.dpp_alpha;
  return j;
}

int emit_report(const std::string& command, Json params, const ExperimentReport& report,
                const CommonOptions& c, std::ostream& out) {
  if (c.output == "csv") {
    write_csv(out, report);
    return kExitSuccess;
  }
  Json j = envelope(command, std::move(params));
  const Json body = to_json(report, c.timing);
  for (const auto& [key, value] : body.items()) j[key] = value;
  emit_json(out, j);
  return kExitSuccess;
}

int cmd_nystrom(const CommonOptions& c, const DataOptions& d, const EnsembleOptions& e,
                std::ostream& out) {
  const ExperimentConfig config = experiment_config(c, d, e);
  Dataset ds = load_data(d, false, c.seed);
  check_cap(ds, d);
  standardize(ds);
  const ExperimentReport report = run_ensemble_nystrom(ds, kernel_spec(d), config);
  Json params = ensemble_params(c, d, e);
  params["epsilon"] = e.epsilon;
  return emit_report("nystrom", std::move(params), report, c, out);
}

int cmd_krr(const CommonOptions& c, const DataOptions& d, const EnsembleOptions& e,
            std::ostream& out) {
  const ExperimentConfig config = experiment_config(c, d, e);
  Dataset ds = load_data(d, true, c.seed);
  check_cap(ds, d);
  const KernelSpec kernel = kernel_spec(d);
  const StratifiedSplit split = split_and_stratify(ds, kernel, e.train_fraction, c.seed, d.jitter);
  const ExperimentReport report = run_ensemble_krr(ds, split, kernel, config);
  Json params = ensemble_params(c, d, e);
  params["train_fraction"] = e.train_fraction;
  return emit_report("krr-ensemble", std::move(params), report, c, out);
}

int cmd_verify(const CommonOptions& c, const VerifyCliOptions& v, std::ostream& out,
               std::ostream& err) {
  std::vector<std::string> suites;
  if (v.suite == "all") {
    suites = verify_suites();
  } else {
    suites.push_back(v.suite);
  }
  std::vector<SuiteResult> results;
  for (const auto& suite : suites) {
    VerifyOptions o;
    o.suite = suite;
    o.n = v.n;
    o.k = v.k;
    o.alpha = v.alpha;
    o.seeds = v.seeds;
    o.seed = c.seed;
    o.draws = v.draws;
    o.threads = c.threads;
    results.push_back(run_verify(o));
  }
  const bool passed = std::all_of(results.begin(), results.end(),
                                  [](const SuiteResult& r) { return r.passed(); });
  if (c.output == "csv") {
    write_csv(out, results);
  } else {
    Json params{{"seed", c.seed}, {"suite", v.suite}, {"n", v.n}, {"k", v.k},
                {"alpha", v.alpha}, {"seeds", v.seeds}, {"draws", v.draws}};
    Json j = envelope("verify", std::move(params));
    j["passed"] = passed;
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(to_json(r));
    j["suites"] = std::move(arr);
    emit_json(out, j);
  }
  if (!passed) {
    for (const auto& r : results) {
      if (r.passed()) continue;
      const Check* w = r.worst();
      err << "verify " << r.suite << ": FAILED (" << w->name << " error " << format_double(w->error)
          << " > tolerance " << format_double(w->tolerance) << " at " << w->instance.dump() << ")\n";
    }
    throw VerificationFailed{};
  }
  return kExitSuccess;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    // Relative data paths are taken relative to the config file.
    if (key == "input" && std::filesystem::path(value).is_relative()) {
      value = (std::filesystem::path(path).parent_path() / value).string();
    }
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

bool on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Turns config entries into command-line tokens for the options that the
// command line does not already set.
std::vector<std::string> expand_config(CLI::App& app, const std::vector<std::string>& args) {
  const auto path = config_path(args);
  if (!path || args.empty()) return args;
  CLI::App* sub = app.get_subcommand_no_throw(args.front());
  if (!sub) return args;
  std::vector<std::string> injected{args.front()};
  for (const auto& [key, value] : read_config(*path)) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt || key == "config" || key == "help") {
      throw InvalidArgument("unknown config key '" + key + "' for " + args.front());
    }
    if (on_command_line(args, flag)) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes" || value == "on") {
        injected.push_back(flag);
      } else if (!(value == "false" || value == "0" || value == "no" || value == "off")) {
        throw InvalidArgument("config key '" + key + "' expects a boolean");
      }
      continue;
    }
    injected.push_back(flag);
    injected.push_back(value);
  }
  injected.insert(injected.end(), args.begin() + 1, args.end());
  return injected;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact DPP and kDPP sampling, ridgeless ensembles and identity checks", "dppens"};
  app.require_subcommand(1);

  CommonOptions common;
  DataOptions data;
  SampleOptions sample;
  RlsOptions rls;
  EnsembleOptions ens;
  VerifyCliOptions ver;

  CLI::App* sample_cmd = app.add_subcommand("sample", "Draw subsets with one sampling scheme");
  add_common(sample_cmd, common);
  add_data(sample_cmd, data);
  sample_cmd->add_option("--scheme", sample.scheme, "uniform, rls, dpp or kdpp")
      ->check(CLI::IsMember({"uniform", "rls", "dpp", "kdpp"}))
      ->capture_default_str();
  sample_cmd->add_option("--k", sample.k, "Subset size (ignored by dpp)")->capture_default_str();
  sample_cmd->add_option("--alpha", sample.alpha, "DPP regularization, L = K / alpha")
      ->capture_default_str();
  sample_cmd->add_option("--rls-lambda", sample.rls_lambda, "RLS ridge per point")
      ->capture_default_str();
  sample_cmd->add_option("--draws", sample.draws, "Number of subsets")->capture_default_str();

  CLI::App* rls_cmd = app.add_subcommand("rls", "Ridge leverage scores of every point");
  add_common(rls_cmd, common);
  add_data(rls_cmd, data);
  rls_cmd->add_option("--alpha", rls.alpha, "Ridge; defaults to rls-lambda * n");
  rls_cmd->add_option("--rls-lambda", rls.rls_lambda, "Ridge per point")->capture_default_str();

  auto add_ensemble = [&](CLI::App* sub) {
    add_common(sub, common);
    add_data(sub, data);
    sub->add_option("--schemes", ens.schemes, "Sampling schemes")
        ->delimiter(',')
        ->check(CLI::IsMember({"uniform", "rls", "dpp", "kdpp"}))
        ->capture_default_str();
    sub->add_option("--k", ens.k, "Landmarks per member")->capture_default_str();
    sub->add_option("--m", ens.m, "Ensemble sizes")->delimiter(',')->capture_default_str();
    sub->add_option("--repeats", ens.repeats, "Independent repeats")->capture_default_str();
    sub->add_option("--rls-lambda", ens.rls_lambda, "RLS ridge per point")->capture_default_str();
    sub->add_option("--dpp-alpha", ens.dpp_alpha, "Regularization of the dpp scheme")
        ->capture_default_str();
    sub->add_flag("--timing", common.timing, "Add wall times (not reproducible)");
  };
  CLI::App* nys_cmd = app.add_subcommand("nystrom", "Ensemble Nystrom approximation error");
  add_ensemble(nys_cmd);
  nys_cmd->add_option("--epsilon", ens.epsilon, "Ridge inside the Nystrom inverse")
      ->capture_default_str();
  CLI::App* krr_cmd = app.add_subcommand("krr-ensemble", "Ensemble ridgeless regression SMAPE");
  add_ensemble(krr_cmd);
  krr_cmd->add_option("--train-fraction", ens.train_fraction, "Training share of the rows")
      ->capture_default_str();

  CLI::App* ver_cmd = app.add_subcommand("verify", "Check the identities on exact or sampled laws");
  add_common(ver_cmd, common);
  std::vector<std::string> suite_names = verify_suites();
  suite_names.push_back("all");
  ver_cmd->add_option("suite,--suite", ver.suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember(suite_names));
  ver_cmd->add_option("--n", ver.n, "Problem sizes")->delimiter(',');
  ver_cmd->add_option("--k", ver.k, "Subset sizes")->delimiter(',');
  ver_cmd->add_option("--alpha", ver.alpha, "Regularization values")->delimiter(',');
  ver_cmd->add_option("--seeds", ver.seeds, "Random instances per grid cell")->capture_default_str();
  ver_cmd->add_option("--draws", ver.draws, "Monte Carlo draw counts")->delimiter(',');

  try {
    std::vector<std::string> argv = expand_config(app, args);
    std::reverse(argv.begin(), argv.end());
    try {
      app.parse(std::move(argv));
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitSuccess : kExitUsage;
    }
    if (sample_cmd->parsed()) {
      apply_preset(sample_cmd, data, &sample.k, &sample.rls_lambda, &data.sigma);
      return cmd_sample(common, data, sample, out);
    }
    if (rls_cmd->parsed()) {
      apply_preset(rls_cmd, data, nullptr, &rls.rls_lambda, &data.sigma);
      return cmd_rls(common, data, rls, out);
    }
    if (nys_cmd->parsed()) {
      apply_preset(nys_cmd, data, &ens.k, &ens.rls_lambda, &data.sigma);
      return cmd_nystrom(common, data, ens, out);
    }
    if (krr_cmd->parsed()) {
      apply_preset(krr_cmd, data, &ens.k, &ens.rls_lambda, &data.sigma);
      return cmd_krr(common, data, ens, out);
    }
    return cmd_verify(common, ver, out, err);
  } catch (const VerificationFailed&) {
    return kExitVerification;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::bad_alloc&) {
    err << "numerical error: out of memory; reduce the problem size or use --subsample\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace dppens::cli
