#include "uqkf/experiment.hpp"

#include "uqkf/enkf.hpp"
#include "uqkf/kde.hpp"
#include "uqkf/metrics.hpp"
#include "uqkf/moments.hpp"
#include "uqkf/oracle.hpp"
#include "uqkf/pckf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uqkf {
namespace {

constexpr const char* kSchema = "uqkf-report-v1";

bool is_rlc(const std::string& e) { return e == "rlc-simultaneous" || e == "rlc-sequential"; }

Problem make_problem(const ExperimentConfig& c) {
  if (c.experiment == "example43") return square_problem(c.sigma);
  if (c.experiment == "elliptic") return elliptic_problem();
  if (c.experiment == "linear-gaussian") return linear_gaussian_problem();
  if (is_rlc(c.experiment)) return rlc_problem(RlcMode::simultaneous(), c.noise_rule);
  throw InvalidArgument("unknown experiment '" + c.experiment + "'");
}

// U's index set over the prior's variables: a xi1 tail on top of degree 1
// for the elliptic problem, total degree elsewhere.
MultiIndexSet u_index_set(const ExperimentConfig& c, Index n, int degree) {
  if (c.experiment == "elliptic") return axis_tail_index_set(n, 1, 0, degree);
  return total_degree_index_set(n, degree);
}

bool use_enkf(const ExperimentConfig& c) { return c.filter != FilterChoice::Pckf; }
bool use_pckf(const ExperimentConfig& c) { return c.filter != FilterChoice::Enkf && c.experiment != "rlc-sequential"; }

std::string to_string(FilterChoice f) {
  switch (f) {
    case FilterChoice::Enkf: return "enkf";
    case FilterChoice::Pckf: return "pckf";
    case FilterChoice::Both: return "both";
  }
  return "both";
}

FilterChoice filter_from_string(const std::string& s) {
  if (s == "enkf") return FilterChoice::Enkf;
  if (s == "pckf") return FilterChoice::Pckf;
  if (s == "both") return FilterChoice::Both;
  throw InvalidArgument("filter must be enkf, pckf or both, got '" + s + "'");
}

Vector std_errors(const Ensemble& e) {
  const Matrix cov = empirical_covariance(e.members());
  return (cov.diagonal().array() / static_cast<double>(e.size())).sqrt();
}

double gain_norm(const Matrix& K) { return K.norm(); }

GridDensity kde_like(const Ensemble& e, Index k, const Axis& axis) {
  const auto samples = row_values(e.members(), k);
  return kde_on_axis(samples, axis).normalized();
}

Json constants_json(const Problem& p, const ExperimentConfig& c) {
  Json j;
  j["problem"] = p.name;
  j["forward"] = p.forward.name();
  j["prior"] = Json::array();
  for (const auto& m : p.prior.marginals()) j["prior"].push_back(m.describe());
  j["noise_cov"] = to_json(p.noise_cov);
  if (c.experiment == "elliptic") j["observation_points"] = {0.25, 0.75};
  if (is_rlc(c.experiment)) {
    const RlcParams truth;
    j["rlc_true"] = {{"U0", truth.U0}, {"R", truth.R}, {"L", truth.L}, {"C", truth.C}};
    j["rlc_times"] = Json::array();
    for (int n = 1; n <= kRlcSteps; ++n) j["rlc_times"].push_back(kRlcStepTime * n);
    j["noise_rule"] = to_string(c.noise_rule);
  }
  return j;
}

struct Context {
  const ExperimentConfig& c;
  Problem problem;
  NoiseModel noise;
  std::string provenance;
  std::filesystem::path out;
};

// Marginal comparisons of an analysis ensemble with the oracle posterior and
// with exact draws of U^a.
Json ensemble_metrics(const Context& ctx, const Ensemble& analysis, const PosteriorSummary& post,
                      const std::optional<Ensemble>& reference) {
  Json j;
  j["hellinger_kde_posterior"] = Json::array();
  for (Index k = 0; k < analysis.dim(); ++k) {
    const auto kde = kde_like(analysis, k, post.marginals[static_cast<std::size_t>(k)].axes()[0]);
    j["hellinger_kde_posterior"].push_back(hellinger_grid(kde, post.marginals[static_cast<std::size_t>(k)]));
  }
  if (reference) {
    j["w1_reference"] = Json::array();
    j["w1_reference_scaled"] = Json::array();
    const Vector sd = empirical_covariance(reference->members()).diagonal().cwiseSqrt();
    for (Index k = 0; k < analysis.dim(); ++k) {
      const auto a = row_values(analysis.members(), k);
      const auto b = row_values(reference->members(), k);
      const double w1 = wasserstein1_1d(a, b);
      j["w1_reference"].push_back(w1);
      j["w1_reference_scaled"].push_back(w1 / (sd(k) / std::sqrt(static_cast<double>(analysis.size()))));
    }
    j["sliced_w1_reference"] = sliced_wasserstein1(analysis.members(), reference->members());
  }
  if (ctx.c.experiment == "example43") {
    // The analysis variable of this problem is distributed as the prior.
    const Axis axis = post.marginals[0].axes()[0];
    const auto kde = kde_like(analysis, 0, axis);
    Vector prior_pdf(axis.count);
    for (Index i = 0; i < axis.count; ++i) prior_pdf(i) = ctx.problem.prior[0].pdf(axis.at(i));
    const GridDensity prior_density({axis}, prior_pdf);
    j["hellinger_kde_prior"] = hellinger_grid(kde, prior_density);
    const auto raw = kde_on_axis(row_values(analysis.members(), 0), axis);
    j["kde_prior_sup_error"] = (raw.values() - prior_pdf).cwiseAbs().maxCoeff();
  }
  return j;
}

void write_marginal_files(const Context& ctx, const std::string& label, const Ensemble& analysis,
                          const PosteriorSummary& post) {
  for (Index k = 0; k < analysis.dim(); ++k) {
    const auto ks = std::to_string(k);
    write_grid_csv(ctx.out / ("posterior_marginal_" + label + "_" + ks + ".csv"),
                   post.marginals[static_cast<std::size_t>(k)], ctx.provenance);
    const auto samples = row_values(analysis.members(), k);
    write_histogram_csv(ctx.out / ("enkf_histogram_" + label + "_" + ks + ".csv"), freedman_diaconis_histogram(samples),
                        ctx.provenance);
  }
}

void write_density_file(const Context& ctx, const std::string& label, const Vector& z) {
  const auto axes = default_axes(ctx.problem.prior, ctx.problem.prior.dim() == 1 ? 1001 : 201);
  const auto coarse = posterior_on_axes(ctx.problem.prior, ctx.problem.forward, ctx.noise, z, axes);
  write_grid_csv(ctx.out / ("posterior_density_" + label + ".csv"), coarse.density, ctx.provenance);
}

Json run_stationary(Context& ctx, Json& summary) {
  const auto& c = ctx.c;
  const auto& prior = ctx.problem.prior;
  const auto& forward = ctx.problem.forward;

  const auto moments = joint_moments(prior, forward, ctx.noise);
  const auto lcm = lcm_estimator(moments);
  const Matrix ua_cov = analysis_covariance(moments, lcm);
  summary["lcm"] = {{"b", to_json(lcm.b)}, {"A", to_json(lcm.A)}, {"analysis_cov", to_json(ua_cov)}};

  std::optional<Ensemble> initial;
  if (use_enkf(c)) initial = sample(prior, c.ensemble_size, c.seed);

  std::optional<PceExpansion> pce_u, pce_z;
  if (use_pckf(c)) {
    auto [u, eps] = joint_prior_expansions(prior, ctx.problem.noise_cov,
                                           u_index_set(c, prior.dim(), c.pce_degree));
    pce_z = pckf_forecast(u, eps, forward, c.quad_order);
    pce_u = std::move(u);
  }

  Json datasets = Json::array();
  std::vector<Ensemble> analyses;
  std::vector<Matrix> pckf_covs;
  for (std::size_t i = 0; i < c.data.size(); ++i) {
    const auto& z = c.data[i];
    const auto& label = c.data_labels[i];
    Json d;
    d["label"] = label;
    d["data"] = to_json(z);

    const auto post = posterior_grid(prior, forward, ctx.noise, z);
    d["posterior"] = posterior_summary_to_json(post.summary);
    d["posterior_mean"] = to_json(post.summary.mean);
    d["lcm_value"] = to_json(lcm(z));
    write_json(ctx.out / ("posterior_summary_" + label + ".json"), d["posterior"]);
    write_density_file(ctx, label, z);

    std::optional<Ensemble> reference;
    if (c.reference && use_enkf(c))
      reference = analysis_reference_sampler(prior, forward, ctx.noise, lcm, z, c.ensemble_size, c.seed);

    if (use_enkf(c)) {
      const auto rec = enkf_update(*initial, forward, ctx.noise, z, c.seed);
      Json e = record_to_json(rec);
      e["gain_norm"] = gain_norm(rec.gain.K);
      e["mean_std_error"] = to_json(std_errors(rec.analysis));
      e["metrics"] = ensemble_metrics(ctx, rec.analysis, post.summary, reference);
      d["enkf_mean"] = to_json(rec.analysis.mean());
      d["enkf"] = std::move(e);
      write_ensemble_csv(ctx.out / ("enkf_analysis_" + label + ".csv"), rec.analysis, ctx.provenance);
      write_json(ctx.out / ("enkf_record_" + label + ".json"), record_to_json(rec));
      write_marginal_files(ctx, label, rec.analysis, post.summary);
      analyses.push_back(rec.analysis);
    }
    if (pce_u) {
      const auto res = pckf_update(*pce_u, *pce_z, z);
      const auto m = pce_moments(res.analysis);
      d["pckf"] = {{"mean", to_json(m.mean)},
                   {"cov", to_json(m.cov)},
                   {"gain", to_json(res.gain.K)},
                   {"gain_norm", gain_norm(res.gain.K)},
                   {"gain_jittered", res.gain.jittered},
                   {"terms", res.analysis.size()}};
      write_json(ctx.out / ("pckf_analysis_" + label + ".json"), pce_to_json(res.analysis));
      pckf_covs.push_back(m.cov);
    }
    datasets.push_back(std::move(d));
  }

  // The fluctuation of U^a does not depend on the data.
  if (c.data.size() >= 2) {
    Json t;
    if (analyses.size() >= 2)
      t["enkf_centered_max_diff"] = (analyses[0].centered() - analyses[1].centered()).cwiseAbs().maxCoeff();
    if (pckf_covs.size() >= 2) t["pckf_cov_max_diff"] = (pckf_covs[0] - pckf_covs[1]).cwiseAbs().maxCoeff();
    summary["data_independence"] = std::move(t);
  }
  return datasets;
}

void write_convergence(Context& ctx, Json& summary) {
  const auto& c = ctx.c;
  if (c.data.empty()) return;
  const auto& prior = ctx.problem.prior;
  const auto& forward = ctx.problem.forward;
  const Vector& z = c.data[0];

  if (!c.ensemble_sweep.empty() && use_enkf(c) && c.experiment != "rlc-sequential") {
    const auto lcm = lcm_estimator(prior, forward, ctx.noise);
    std::string csv = "# " + ctx.provenance + "\nM";
    for (Index k = 0; k < prior.dim(); ++k) csv += ",w1_dim" + std::to_string(k);
    for (Index k = 0; k < prior.dim(); ++k) csv += ",mean_error_dim" + std::to_string(k);
    csv += "\n";
    Json rows = Json::array();
    for (Index M : c.ensemble_sweep) {
      const auto rec = enkf_update(sample(prior, M, c.seed), forward, ctx.noise, z, c.seed);
      const auto ref = analysis_reference_sampler(prior, forward, ctx.noise, lcm, z, M, c.seed);
      Json row{{"M", M}};
      csv += std::to_string(M);
      Json w1 = Json::array();
      for (Index k = 0; k < prior.dim(); ++k) {
        const double w = wasserstein1_1d(row_values(rec.analysis.members(), k), row_values(ref.members(), k));
        w1.push_back(w);
        csv += "," + format_double(w);
      }
      const Vector err = (rec.analysis.mean() - lcm(z)).cwiseAbs();
      for (Index k = 0; k < prior.dim(); ++k) csv += "," + format_double(err(k));
      csv += "\n";
      row["w1"] = std::move(w1);
      row["mean_error"] = to_json(err);
      rows.push_back(std::move(row));
    }
    write_text(ctx.out / "convergence_enkf.csv", csv);
    summary["convergence_enkf"] = std::move(rows);
  }

  if (!c.pce_sweep.empty() && use_pckf(c)) {
    auto degrees = c.pce_sweep;
    std::sort(degrees.begin(), degrees.end());
    auto analysis_at = [&](int degree) {
      auto [u, eps] = joint_prior_expansions(prior, ctx.problem.noise_cov, u_index_set(c, prior.dim(), degree));
      const auto zj = pckf_forecast(u, eps, forward, c.quad_order);
      return pckf_update(u, zj, z).analysis;
    };
    const auto reference = analysis_at(degrees.back());
    std::string csv = "# " + ctx.provenance + "\ndegree,l2_to_reference\n";
    Json rows = Json::array();
    for (int p : degrees) {
      const double err = l2_distance(analysis_at(p), reference);
      csv += std::to_string(p) + "," + format_double(err) + "\n";
      rows.push_back({{"degree", p}, {"l2_to_reference", err}});
    }
    write_text(ctx.out / "convergence_pckf.csv", csv);
    summary["convergence_pckf"] = std::move(rows);
  }
}

Json run_sequential(Context& ctx) {
  const auto& c = ctx.c;
  const auto& prior = ctx.problem.prior;
  const Vector variances = rlc_noise_variances(c.noise_rule);
  const auto initial = sample(prior, c.ensemble_size, c.seed);

  Json datasets = Json::array();
  for (std::size_t i = 0; i < c.data.size(); ++i) {
    const auto& z = c.data[i];
    const auto& label = c.data_labels[i];
    require(z.size() == 2 * kRlcSteps, "RLC data must have 8 entries");

    std::vector<AssimilationStep> steps;
    for (int n = 1; n <= kRlcSteps; ++n)
      steps.push_back({rlc_model(RlcMode::step(n)), NoiseModel::diagonal(variances.segment(2 * (n - 1), 2)),
                       z.segment(2 * (n - 1), 2)});
    const auto records = enkf_assimilate_sequential(initial, steps, c.seed);

    Json d;
    d["label"] = label;
    d["data"] = to_json(z);
    Json rows = Json::array();
    Json dump = Json::array();
    for (int n = 1; n <= kRlcSteps; ++n) {
      const auto& rec = records[static_cast<std::size_t>(n - 1)];
      const auto post = posterior_grid(prior, rlc_model(RlcMode::prefix(n)),
                                       NoiseModel::diagonal(variances.head(2 * n)), z.head(2 * n));
      rows.push_back({{"step", n},
                      {"enkf_mean", to_json(rec.analysis.mean())},
                      {"enkf_mean_std_error", to_json(std_errors(rec.analysis))},
                      {"posterior_mean", to_json(post.summary.mean)},
                      {"posterior_map", to_json(post.summary.map)}});
      dump.push_back(record_to_json(rec));
      write_ensemble_csv(ctx.out / ("enkf_analysis_" + label + "_step" + std::to_string(n) + ".csv"), rec.analysis,
                         ctx.provenance);
    }
    d["steps"] = std::move(rows);
    write_json(ctx.out / ("enkf_records_" + label + ".json"), dump);
    datasets.push_back(std::move(d));
  }
  return datasets;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"example43", "elliptic", "rlc-simultaneous", "rlc-sequential", "linear-gaussian"};
}

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  auto presets = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) {
      c.data_labels.emplace_back(n);
      c.data.push_back(data_preset(n));
    }
  };
  if (experiment == "example43") {
    c.ensemble_size = 100000;
    c.pce_degree = 2;
    c.data_labels = {"z"};
    c.data = {Vector::Constant(1, 9.0)};
  } else if (experiment == "elliptic") {
    c.ensemble_size = 100000;
    c.pce_degree = 50;
    presets({"elliptic-z", "elliptic-ztilde"});
  } else if (is_rlc(experiment)) {
    c.ensemble_size = 10000;
    c.pce_degree = 30;
    presets({"rlc-z", "rlc-ztilde"});
  } else if (experiment == "linear-gaussian") {
    c.ensemble_size = 10000;
    c.pce_degree = 1;
    c.data_labels = {"z"};
    c.data = {Vector::Constant(1, 1.0)};
  } else {
    throw InvalidArgument("unknown experiment '" + experiment + "'");
  }
  return c;
}

ExperimentConfig config_from_json(const Json& j, const std::string& experiment) {
  const std::string name = j.contains("experiment") ? j["experiment"].get<std::string>() : experiment;
  require(experiment.empty() || name == experiment,
          "config names experiment '" + name + "' but '" + experiment + "' was requested");
  ExperimentConfig c = default_config(name);
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("ensemble_size")) c.ensemble_size = j["ensemble_size"].get<Index>();
  if (j.contains("ensemble_sweep")) c.ensemble_sweep = j["ensemble_sweep"].get<std::vector<Index>>();
  if (j.contains("pce_degree")) c.pce_degree = j["pce_degree"].get<int>();
  if (j.contains("pce_sweep")) c.pce_sweep = j["pce_sweep"].get<std::vector<int>>();
  if (j.contains("quad_order") && !j["quad_order"].is_null()) c.quad_order = j["quad_order"].get<int>();
  if (j.contains("sigma")) c.sigma = j["sigma"].get<double>();
  if (j.contains("noise_rule")) c.noise_rule = rlc_noise_rule_from_string(j["noise_rule"].get<std::string>());
  if (j.contains("filter")) c.filter = filter_from_string(j["filter"].get<std::string>());
  if (j.contains("reference")) c.reference = j["reference"].get<bool>();
  if (j.contains("data")) {
    c.data.clear();
    c.data_labels.clear();
    for (const auto& item : j["data"]) {
      if (item.is_string()) {
        c.data_labels.push_back(item.get<std::string>());
        c.data.push_back(data_preset(item.get<std::string>()));
      } else {
        c.data_labels.push_back("data" + std::to_string(c.data.size()));
        c.data.push_back(vector_from_json(item));
      }
    }
  }
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  j["problem"] = make_problem(c).name;
  j["seed"] = c.seed;
  j["ensemble_size"] = c.ensemble_size;
  j["ensemble_sweep"] = c.ensemble_sweep;
  j["pce_degree"] = c.pce_degree;
  j["pce_sweep"] = c.pce_sweep;
  j["quad_order"] = c.quad_order ? Json(*c.quad_order) : Json(nullptr);
  j["sigma"] = c.sigma;
  j["noise_rule"] = to_string(c.noise_rule);
  j["filter"] = to_string(c.filter);
  j["reference"] = c.reference;
  j["data_labels"] = c.data_labels;
  j["data"] = Json::array();
  for (const auto& z : c.data) j["data"].push_back(to_json(z));
  return j;
}

std::string config_hash(const ExperimentConfig& c) { return hex64(fnv1a64(config_to_json(c).dump())); }

Json run_experiment(const ExperimentConfig& c) {
  require(c.ensemble_size >= 2, "ensemble_size must be >= 2");
  require(c.pce_degree >= 1, "pce_degree must be >= 1");
  require(!c.data.empty() && c.data.size() == c.data_labels.size(), "at least one labelled data vector is needed");
  for (const auto& l : c.data_labels) require(!l.empty() && l.find('/') == std::string::npos, "bad data label");

  Problem problem = make_problem(c);
  for (const auto& z : c.data)
    require(c.experiment == "rlc-sequential" || z.size() == problem.forward.output_dim(),
            "data vector dimension differs from the forward model output");
  NoiseModel noise(problem.noise_cov);
  const std::string hash = config_hash(c);
  Context ctx{c, std::move(problem), std::move(noise),
              "uqkf " + c.experiment + " config=" + hash + " seed=" + std::to_string(c.seed), c.out};
  std::filesystem::create_directories(ctx.out);

  Json summary;
  summary["schema"] = kSchema;
  summary["experiment"] = c.experiment;
  summary["config_hash"] = hash;
  summary["config"] = config_to_json(c);
  summary["constants"] = constants_json(ctx.problem, c);
  summary["datasets"] = c.experiment == "rlc-sequential" ? run_sequential(ctx) : run_stationary(ctx, summary);
  write_convergence(ctx, summary);
  write_json(ctx.out / "summary.json", summary);
  return summary;
}

void write_error_record(const std::filesystem::path& out, const std::string& kind, const std::string& message) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = kind;
  j["message"] = message;
  write_json(out / "error.json", j);
}

}  // namespace uqkf
