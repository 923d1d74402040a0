#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssmusic/bounds.hpp"
#include "ssmusic/experiments.hpp"
#include "ssmusic/hankel_subspace.hpp"
#include "ssmusic/io.hpp"
#include "ssmusic/music.hpp"
#include "ssmusic/signal_model.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Configuration problems exit with 2; numeric-domain errors from the library
// exit with 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_writable_dir(const fs::path& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec || !fs::is_directory(path)) {
    throw ConfigError("output directory not writable: " + path.string());
  }
}

void require_writable_file(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw ConfigError("output path not writable: " + path.string());
  }
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw ConfigError("output path not writable: " + path.string());
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw ConfigError("NSR grid requires 0 < min < max and count >= 2");
  }
  std::vector<double> values(count);
  const double step = (std::log(hi) - std::log(lo)) / (count - 1);
  for (int i = 0; i < count; ++i) values[i] = std::exp(std::log(lo) + i * step);
  values.back() = hi;
  return values;
}

json complex_list(const std::vector<std::complex<double>>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back({v.real(), v.imag()});
  return out;
}

int run_synth(const fs::path& model_path, const fs::path& output,
              std::optional<double> nsr_override, std::optional<double> sigma_override,
              std::optional<std::uint64_t> seed) {
  require_writable_file(output);
  const ssmusic::ModelFile file = ssmusic::read_model_json(model_path);
  const ssmusic::Signal clean = ssmusic::synthesize(file.model, file.data_length);

  double sigma = file.noise.sigma;
  if (nsr_override) sigma = ssmusic::sigma_for_nsr(clean, *nsr_override);
  if (sigma_override) sigma = *sigma_override;
  if (sigma > 0.0 && !seed) {
    throw ConfigError("synth with noise is stochastic: --seed is required");
  }

  json config{{"subcommand", "synth"},
              {"model", model_path.string()},
              {"M", file.data_length},
              {"sigma", sigma},
              {"seed", seed ? *seed : 0}};
  ssmusic::Signal out = clean;
  if (sigma > 0.0) {
    out = ssmusic::add_noise(clean, ssmusic::NoiseSpec{sigma, *seed});
  }
  ssmusic::write_signal_csv(output, out, config.dump());
  std::cout << "wrote " << output.string() << "\n";
  return 0;
}

int run_estimate(const fs::path& input, int num_tones, std::optional<int> data_length,
                 std::optional<int> pencil, double grid_step_rl, double refine_tol,
                 const fs::path& output, const std::optional<fs::path>& profile_path) {
  const ssmusic::Signal signal = ssmusic::read_signal_csv(input);
  if (data_length && *data_length != signal.data_length()) {
    throw ConfigError("--M does not match the input signal length");
  }
  const int m = signal.data_length();
  const int l = pencil ? *pencil : m / 2;

  json config{{"subcommand", "estimate"}, {"input", input.string()},  {"s", num_tones},
              {"M", m},                   {"L", l},                    {"grid_step_rl", grid_step_rl},
              {"refine_tol", refine_tol}};

  const ssmusic::HankelMatrix hankel = ssmusic::build_hankel(signal, l);
  const ssmusic::SubspaceSplit split = ssmusic::subspace_split(hankel, num_tones);
  const ssmusic::CorrelationProfile profile = ssmusic::scan_profile(split, grid_step_rl);
  const ssmusic::EstimateResult estimate =
      ssmusic::extract_minima(profile, split, num_tones, refine_tol);
  ssmusic::AmplitudeSolution amplitudes;
  if (!estimate.frequencies.empty()) {
    amplitudes = ssmusic::amplitude_solve(estimate.frequencies, signal);
  }
  ssmusic::write_estimate_json(output, estimate, amplitudes, config.dump());
  if (profile_path) ssmusic::write_profile_csv(*profile_path, profile, config.dump());
  std::cout << "wrote " << output.string() << "\n";
  return 0;
}

int run_bounds(int pencil, std::optional<double> min_gap, std::optional<int> data_length,
               double xmin, double xmax, const std::optional<fs::path>& model_path,
               std::optional<int> cluster_size, std::optional<double> rho,
               std::optional<double> nsr_value, std::optional<std::uint64_t> seed,
               const std::optional<fs::path>& dump_path,
               const std::optional<fs::path>& output) {
  if (output) require_writable_file(*output);
  if (dump_path) require_writable_file(*dump_path);

  std::optional<ssmusic::ModelFile> model;
  if (model_path) model = ssmusic::read_model_json(*model_path);
  if (model && !data_length) data_length = model->data_length;

  double q = 0.0;
  if (min_gap) {
    q = *min_gap;
  } else if (model) {
    q = model->model.min_gap();
  } else {
    throw ConfigError("bounds requires --q or --model");
  }

  json config{{"subcommand", "bounds"}, {"L", pencil}, {"q", q}};
  if (data_length) config["M"] = *data_length;
  if (model_path) config["model"] = model_path->string();

  json report;
  report["config"] = config;

  const ssmusic::InghamReport ingham = ssmusic::ingham_bounds(pencil, q);
  report["ingham"] = {{"L", ingham.pencil},
                      {"q", ingham.min_gap},
                      {"gap_threshold", std::isfinite(ingham.gap_threshold)
                                            ? json(ingham.gap_threshold)
                                            : json()},
                      {"gap_satisfied", ingham.gap_satisfied},
                      {"lower_per_L", ingham.lower_per_l},
                      {"upper_per_L", ingham.upper_per_l},
                      {"parity", ingham.even_branch ? "even" : "odd"}};

  if (data_length) {
    const auto alphas = ssmusic::corollary_alphas(xmin, xmax, pencil, *data_length, q);
    report["corollary"] = {{"alpha1", alphas.alpha1},
                           {"alpha2", alphas.alpha2},
                           {"gap_ok", alphas.gap_ok},
                           {"head_parity", alphas.head_even ? "even" : "odd"},
                           {"tail_parity", alphas.tail_even ? "even" : "odd"}};
  }

  if (cluster_size && rho) {
    const auto cluster = ssmusic::cluster_upper_bound(*cluster_size, *rho, pencil);
    report["cluster"] = {{"R", cluster.cluster_size},
                         {"rho", cluster.rho},
                         {"B_value", cluster.b_value},
                         {"upper_per_L", cluster.upper_per_l},
                         {"rayleigh_index", cluster.rayleigh_index}};
  }

  if (model) {
    const auto& freqs = model->model.frequencies();
    const auto head = ssmusic::vandermonde_extremes(freqs, pencil);
    report["oracle"] = {{"smin_sq_per_L", head.smin_sq_per_l},
                        {"smax_sq_per_L", head.smax_sq_per_l}};
    if (data_length) {
      const auto tail = ssmusic::vandermonde_extremes(freqs, *data_length - pencil);
      report["oracle"]["tail_smin_sq_per_L"] = tail.smin_sq_per_l;
      report["oracle"]["tail_smax_sq_per_L"] = tail.smax_sq_per_l;
    }
    const auto index = ssmusic::rayleigh_index(freqs, pencil);
    report["rayleigh_index"] = {{"value", index.value}, {"boundary", index.boundary}};

    double sigma = model->noise.sigma;
    if (data_length) {
      const ssmusic::Signal clean = ssmusic::synthesize(model->model, *data_length);
      if (nsr_value) sigma = ssmusic::sigma_for_nsr(clean, *nsr_value);
      if (sigma > 0.0) {
        if (!seed) throw ConfigError("bounds with noise is stochastic: --seed is required");
        const ssmusic::Signal noisy =
            ssmusic::add_noise(clean, ssmusic::NoiseSpec{sigma, *seed});
        ssmusic::Signal noise_only;
        noise_only.samples = noisy.samples - clean.samples;

        const int s = model->model.size();
        const auto clean_split =
            ssmusic::subspace_split(ssmusic::build_hankel(clean, pencil), s);
        const auto noisy_split =
            ssmusic::subspace_split(ssmusic::build_hankel(noisy, pencil), s);
        const double noise_norm =
            ssmusic::spectral_norm(ssmusic::build_hankel(noise_only, pencil).entries);
        const double sigma1 = clean_split.singular_values[0];
        const double sigma_s = clean_split.singular_values[s - 1];
        const auto perturbation = ssmusic::perturbation_bound(sigma1, sigma_s, noise_norm);

        double measured = 0.0;
        const auto clean_profile = ssmusic::scan_profile(clean_split, 0.05);
        for (std::size_t i = 0; i < clean_profile.grid.size(); ++i) {
          const double delta = std::fabs(
              ssmusic::correlation_at(noisy_split, clean_profile.grid[i]) -
              clean_profile.r_values[i]);
          measured = std::max(measured, delta);
        }
        double measured_support = 0.0;
        for (double w : freqs) {
          measured_support =
              std::max(measured_support, ssmusic::correlation_at(noisy_split, w));
        }
        const auto tail = ssmusic::vandermonde_extremes(freqs, *data_length - pencil);
        const double support = ssmusic::support_bound(
            noise_norm, model->model.min_abs_amplitude(),
            std::sqrt(tail.smin_sq_per_l * (*data_length - pencil)), pencil);

        report["perturbation"] = {
            {"sigma1", sigma1},
            {"sigma_s", sigma_s},
            {"noise_norm", noise_norm},
            {"applicable", perturbation.applicable},
            {"alpha", perturbation.applicable ? json(perturbation.alpha) : json()},
            {"uniform_bound",
             perturbation.applicable ? json(perturbation.uniform_bound) : json()},
            {"measured_sup_gap", measured},
            {"support_bound", support},
            {"measured_support_correlation", measured_support},
            {"sigma", sigma},
            {"seed", *seed}};
      }
    }

    if (dump_path) {
      const auto phi = ssmusic::build_vandermonde(freqs, 0, pencil);
      ssmusic::write_matrix_csv(*dump_path, phi.entries, config.dump());
    }
  } else if (dump_path) {
    throw ConfigError("--dump requires --model");
  }

  const std::string text = report.dump(2);
  std::cout << text << "\n";
  if (output) {
    std::ofstream out(*output);
    if (!out) throw ConfigError("output path not writable: " + output->string());
    out << text << "\n";
  }
  return 0;
}

int run_phase_transition(int cluster_size, std::vector<double> q_list,
                         std::vector<double> nsr_values, int trials, std::uint64_t seed,
                         int data_length, int pencil, int threads, const fs::path& out_dir,
                         std::vector<std::string> formats) {
  std::sort(q_list.begin(), q_list.end());
  std::sort(nsr_values.begin(), nsr_values.end());

  json config{{"subcommand", "phase-transition"},
              {"rstar", cluster_size},
              {"q_values_rl", q_list},
              {"nsr_values", nsr_values},
              {"trials", trials},
              {"seed", seed},
              {"M", data_length},
              {"L", pencil}};
  const fs::path run_dir = out_dir / ("run_" + ssmusic::config_hash(config.dump()));
  require_writable_dir(run_dir);

  const ssmusic::PhaseGrid grid = ssmusic::phase_transition(
      q_list, nsr_values, cluster_size, data_length, pencil, trials, seed, threads);

  std::optional<ssmusic::TransitionCurve> curve;
  try {
    curve = ssmusic::fit_transition(grid);
  } catch (const std::domain_error& e) {
    std::cerr << "note: " << e.what() << "\n";
  }

  {
    std::ofstream out(run_dir / "spec.json");
    out << config.dump(2) << "\n";
  }
  const auto written = ssmusic::emit_phase_report(
      run_dir, grid, curve ? &*curve : nullptr, config.dump(), formats);
  for (const auto& path : written) std::cout << "wrote " << path.string() << "\n";
  if (curve) {
    std::cout << "fitted exponent " << curve->fitted_exponent << " scale "
              << curve->fitted_scale << "\n";
  }
  return 0;
}

int run_sweep(ssmusic::TrialSpec spec, std::vector<double> nsr_values, const fs::path& out_dir,
              std::vector<std::string> formats) {
  std::sort(nsr_values.begin(), nsr_values.end());
  json config{{"subcommand", "sweep"},
              {"M", spec.data_length},
              {"L", spec.pencil},
              {"s", spec.num_tones},
              {"separation_rl", spec.separation_rl},
              {"dynamic_range", spec.dynamic_range},
              {"nsr_values", nsr_values},
              {"trials", spec.num_trials},
              {"seed", spec.base_seed},
              {"phase_mode", ssmusic::to_string(spec.phase_mode)},
              {"placement", ssmusic::to_string(spec.placement)}};
  const fs::path run_dir = out_dir / ("run_" + ssmusic::config_hash(config.dump()));
  require_writable_dir(run_dir);

  std::vector<ssmusic::TrialSummary> summaries;
  summaries.reserve(nsr_values.size());
  for (double nsr : nsr_values) {
    ssmusic::TrialSpec cell = spec;
    cell.nsr = nsr;
    summaries.push_back(ssmusic::run_trials(cell));
  }

  {
    std::ofstream out(run_dir / "spec.json");
    out << config.dump(2) << "\n";
  }
  const auto written = ssmusic::emit_sweep_report(run_dir, spec, nsr_values, summaries,
                                                  config.dump(), formats);
  for (const auto& path : written) std::cout << "wrote " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-snapshot MUSIC spectral estimation, singular-value bounds, and "
               "Monte Carlo experiment harness"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "synthesize a (noisy) signal from a model file");
  std::string synth_model, synth_output;
  double synth_nsr = -1.0, synth_sigma = -1.0;
  std::int64_t synth_seed = -1;
  synth->add_option("--model", synth_model, "model JSON")->required()->check(CLI::ExistingFile);
  synth->add_option("--output", synth_output, "signal CSV to write")->required();
  synth->add_option("--nsr", synth_nsr, "target noise-to-signal ratio");
  synth->add_option("--sigma", synth_sigma, "noise std-dev per component");
  synth->add_option("--seed", synth_seed, "noise seed (required when noise > 0)");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "run the MUSIC estimator on a signal CSV");
  std::string est_input, est_output = "estimate.json", est_profile;
  int est_s = 0;
  int est_m = -1, est_l = -1;
  double est_step = ssmusic::kDefaultGridStepRl, est_tol = ssmusic::kDefaultRefineTol;
  estimate->add_option("--input", est_input, "signal CSV")->required()->check(CLI::ExistingFile);
  estimate->add_option("--s", est_s, "number of tones")->required()->check(CLI::PositiveNumber);
  estimate->add_option("--M", est_m, "expected data length (validated)");
  estimate->add_option("--L", est_l, "pencil parameter (default floor(M/2))");
  estimate->add_option("--grid-step-rl", est_step, "scan step in Rayleigh lengths");
  estimate->add_option("--refine-tol", est_tol, "golden-section tolerance");
  estimate->add_option("--output", est_output, "estimate JSON to write");
  estimate->add_option("--profile", est_profile, "also dump the correlation profile CSV");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "evaluate singular-value and perturbation bounds");
  int bnd_l = 0, bnd_m = -1, bnd_rstar = -1;
  double bnd_q = -1.0, bnd_xmin = 1.0, bnd_xmax = 1.0, bnd_rho = -1.0, bnd_nsr = -1.0;
  std::int64_t bnd_seed = -1;
  std::string bnd_model, bnd_dump, bnd_output;
  bounds->add_option("--L", bnd_l, "pencil parameter")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--q", bnd_q, "minimum torus gap");
  bounds->add_option("--M", bnd_m, "data length (enables corollary/perturbation parts)");
  bounds->add_option("--xmin", bnd_xmin, "minimum amplitude magnitude");
  bounds->add_option("--xmax", bnd_xmax, "maximum amplitude magnitude");
  bounds->add_option("--model", bnd_model, "model JSON for oracle comparisons")
      ->check(CLI::ExistingFile);
  bounds->add_option("--rstar", bnd_rstar, "cluster size R for the weakened-gap bound");
  bounds->add_option("--rho", bnd_rho, "per-cluster gap rho");
  bounds->add_option("--nsr", bnd_nsr, "noise level for the perturbation section");
  bounds->add_option("--seed", bnd_seed, "noise seed");
  bounds->add_option("--dump", bnd_dump, "dump the model Vandermonde matrix to CSV");
  bounds->add_option("--output", bnd_output, "also write the JSON report here");

  // phase-transition
  auto* phase = app.add_subcommand("phase-transition", "super-resolution phase-transition grid");
  int pt_rstar = 2, pt_nsr_count = 12, pt_trials = 20, pt_m = 100, pt_l = -1, pt_threads = 0;
  double pt_nsr_min = 1e-5, pt_nsr_max = 0.5;
  std::int64_t pt_seed = -1;
  std::vector<double> pt_q = {0.3, 0.4, 0.6, 0.8, 1.2, 1.6, 2.0};
  std::string pt_out = "phase_out", pt_spec;
  std::vector<std::string> pt_formats = {"csv", "json", "svg"};
  phase->add_option("--spec", pt_spec, "JSON spec file (flags override its values)")
      ->check(CLI::ExistingFile);
  auto* pt_rstar_opt = phase->add_option("--rstar", pt_rstar, "cluster size (2..5)");
  auto* pt_q_opt = phase->add_option("--q-list", pt_q, "separations in RL")->delimiter(',');
  phase->add_option("--nsr-min", pt_nsr_min, "lowest NSR on the log grid");
  phase->add_option("--nsr-max", pt_nsr_max, "highest NSR on the log grid");
  phase->add_option("--nsr-count", pt_nsr_count, "number of NSR grid points");
  auto* pt_trials_opt = phase->add_option("--trials", pt_trials, "trials per cell");
  auto* pt_seed_opt = phase->add_option("--seed", pt_seed, "base seed");
  auto* pt_m_opt = phase->add_option("--M", pt_m, "data length");
  auto* pt_l_opt = phase->add_option("--L", pt_l, "pencil parameter (default floor(M/2))");
  phase->add_option("--threads", pt_threads, "worker cap (0 = cores)");
  phase->add_option("--out", pt_out, "output directory");
  phase->add_option("--formats", pt_formats, "csv,json,svg subset")->delimiter(',');

  // sweep
  auto* sweep = app.add_subcommand("sweep", "error-vs-NSR Monte Carlo sweep");
  ssmusic::TrialSpec sweep_spec;
  std::int64_t sweep_seed = -1;
  int sweep_m = 100, sweep_l = -1;
  std::vector<double> sweep_nsr = {0.0};
  std::string sweep_out = "sweep_out", sweep_phase = "random-complex",
              sweep_placement = "random-min-gap", sweep_spec_path;
  std::vector<std::string> sweep_formats = {"csv", "json", "svg"};
  sweep->add_option("--spec", sweep_spec_path, "JSON spec file (flags override its values)")
      ->check(CLI::ExistingFile);
  auto* sw_s_opt = sweep->add_option("--s", sweep_spec.num_tones, "number of tones");
  auto* sw_sep_opt =
      sweep->add_option("--sep-rl", sweep_spec.separation_rl, "minimum separation in RL");
  auto* sw_dyn_opt = sweep->add_option("--dynamic-range", sweep_spec.dynamic_range, "xmax/xmin");
  auto* sw_nsr_opt = sweep->add_option("--nsr-list", sweep_nsr, "NSR values")->delimiter(',');
  auto* sw_trials_opt = sweep->add_option("--trials", sweep_spec.num_trials, "trials per NSR");
  auto* sw_seed_opt = sweep->add_option("--seed", sweep_seed, "base seed");
  auto* sw_m_opt = sweep->add_option("--M", sweep_m, "data length");
  auto* sw_l_opt = sweep->add_option("--L", sweep_l, "pencil parameter (default floor(M/2))");
  auto* sw_phase_opt = sweep->add_option("--phase-mode", sweep_phase,
                                         "random-complex|real-positive|alternating-sign");
  auto* sw_place_opt =
      sweep->add_option("--placement", sweep_placement, "equispaced|random-min-gap");
  sweep->add_option("--threads", sweep_spec.threads, "worker cap (0 = cores)");
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--formats", sweep_formats, "csv,json,svg subset")->delimiter(',');

  try {
    app.parse(argc, argv);

    if (synth->parsed()) {
      return run_synth(synth_model, synth_output,
                       synth_nsr >= 0.0 ? std::optional<double>(synth_nsr) : std::nullopt,
                       synth_sigma >= 0.0 ? std::optional<double>(synth_sigma) : std::nullopt,
                       synth_seed >= 0 ? std::optional<std::uint64_t>(synth_seed)
                                       : std::nullopt);
    }
    if (estimate->parsed()) {
      require_writable_file(est_output);
      return run_estimate(est_input, est_s,
                          est_m >= 0 ? std::optional<int>(est_m) : std::nullopt,
                          est_l >= 0 ? std::optional<int>(est_l) : std::nullopt, est_step,
                          est_tol, est_output,
                          est_profile.empty() ? std::nullopt
                                              : std::optional<fs::path>(est_profile));
    }
    if (bounds->parsed()) {
      return run_bounds(bnd_l, bnd_q >= 0.0 ? std::optional<double>(bnd_q) : std::nullopt,
                        bnd_m >= 0 ? std::optional<int>(bnd_m) : std::nullopt, bnd_xmin,
                        bnd_xmax,
                        bnd_model.empty() ? std::nullopt : std::optional<fs::path>(bnd_model),
                        bnd_rstar >= 1 ? std::optional<int>(bnd_rstar) : std::nullopt,
                        bnd_rho > 0.0 ? std::optional<double>(bnd_rho) : std::nullopt,
                        bnd_nsr >= 0.0 ? std::optional<double>(bnd_nsr) : std::nullopt,
                        bnd_seed >= 0 ? std::optional<std::uint64_t>(bnd_seed) : std::nullopt,
                        bnd_dump.empty() ? std::nullopt : std::optional<fs::path>(bnd_dump),
                        bnd_output.empty() ? std::nullopt
                                           : std::optional<fs::path>(bnd_output));
    }
    if (phase->parsed()) {
      std::vector<double> nsr_values;
      bool nsr_from_spec = false;
      if (!pt_spec.empty()) {
        // spec file fills anything not explicitly set on the command line
        std::ifstream in(pt_spec);
        const json spec = json::parse(in);
        if (pt_rstar_opt->count() == 0 && spec.contains("rstar")) {
          pt_rstar = spec["rstar"].get<int>();
        }
        if (pt_q_opt->count() == 0 && spec.contains("q_values_rl")) {
          pt_q = spec["q_values_rl"].get<std::vector<double>>();
        }
        if (pt_trials_opt->count() == 0 && spec.contains("trials")) {
          pt_trials = spec["trials"].get<int>();
        }
        if (pt_seed_opt->count() == 0 && spec.contains("seed")) {
          pt_seed = spec["seed"].get<std::int64_t>();
        }
        if (pt_m_opt->count() == 0 && spec.contains("M")) pt_m = spec["M"].get<int>();
        if (pt_l_opt->count() == 0 && spec.contains("L")) pt_l = spec["L"].get<int>();
        if (spec.contains("nsr_values")) {
          nsr_values = spec["nsr_values"].get<std::vector<double>>();
          nsr_from_spec = true;
        }
      }
      if (!nsr_from_spec || phase->count("--nsr-min") > 0 ||
          phase->count("--nsr-max") > 0 || phase->count("--nsr-count") > 0) {
        nsr_values = log_grid(pt_nsr_min, pt_nsr_max, pt_nsr_count);
      }
      if (pt_seed < 0) throw ConfigError("phase-transition requires --seed");
      if (pt_rstar_opt->count() == 0 && pt_spec.empty()) {
        throw ConfigError("phase-transition requires --rstar (or --spec)");
      }
      return run_phase_transition(pt_rstar, pt_q, nsr_values, pt_trials,
                                  static_cast<std::uint64_t>(pt_seed), pt_m,
                                  pt_l >= 0 ? pt_l : pt_m / 2, pt_threads, pt_out, pt_formats);
    }
    if (sweep->parsed()) {
      if (!sweep_spec_path.empty()) {
        std::ifstream in(sweep_spec_path);
        const json spec = json::parse(in);
        if (sw_s_opt->count() == 0 && spec.contains("s")) {
          sweep_spec.num_tones = spec["s"].get<int>();
        }
        if (sw_sep_opt->count() == 0 && spec.contains("separation_rl")) {
          sweep_spec.separation_rl = spec["separation_rl"].get<double>();
        }
        if (sw_dyn_opt->count() == 0 && spec.contains("dynamic_range")) {
          sweep_spec.dynamic_range = spec["dynamic_range"].get<double>();
        }
        if (sw_nsr_opt->count() == 0 && spec.contains("nsr_values")) {
          sweep_nsr = spec["nsr_values"].get<std::vector<double>>();
        }
        if (sw_trials_opt->count() == 0 && spec.contains("trials")) {
          sweep_spec.num_trials = spec["trials"].get<int>();
        }
        if (sw_seed_opt->count() == 0 && spec.contains("seed")) {
          sweep_seed = spec["seed"].get<std::int64_t>();
        }
        if (sw_m_opt->count() == 0 && spec.contains("M")) sweep_m = spec["M"].get<int>();
        if (sw_l_opt->count() == 0 && spec.contains("L")) sweep_l = spec["L"].get<int>();
        if (sw_phase_opt->count() == 0 && spec.contains("phase_mode")) {
          sweep_phase = spec["phase_mode"].get<std::string>();
        }
        if (sw_place_opt->count() == 0 && spec.contains("placement")) {
          sweep_placement = spec["placement"].get<std::string>();
        }
      }
      if (sw_s_opt->count() == 0 && sweep_spec_path.empty()) {
        throw ConfigError("sweep requires --s (or --spec)");
      }
      if (sweep_seed < 0) throw ConfigError("sweep requires --seed");
      sweep_spec.base_seed = static_cast<std::uint64_t>(sweep_seed);
      sweep_spec.data_length = sweep_m;
      sweep_spec.pencil = sweep_l >= 0 ? sweep_l : sweep_m / 2;
      sweep_spec.phase_mode = ssmusic::parse_phase_mode(sweep_phase);
      sweep_spec.placement = ssmusic::parse_placement_mode(sweep_placement);
      return run_sweep(sweep_spec, sweep_nsr, sweep_out, sweep_formats);
    }
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
