#ifndef SSMUSIC_EXPERIMENTS_HPP
#define SSMUSIC_EXPERIMENTS_HPP

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ssmusic {

enum class PhaseMode { kRandomComplex, kRealPositive, kAlternatingSign };

enum class PlacementMode { kEquispaced, kRandomMinGap };

PhaseMode parse_phase_mode(const std::string& name);
std::string to_string(PhaseMode mode);
PlacementMode parse_placement_mode(const std::string& name);
std::string to_string(PlacementMode mode);

// One Monte Carlo sweep configuration. Trial t uses seed base_seed + t.
struct TrialSpec {
  int data_length = 100;  // M
  int pencil = 50;        // L
  int num_tones = 15;     // s
  double separation_rl = 4.0;
  double dynamic_range = 1.0;
  double nsr = 0.0;
  int num_trials = 100;
  std::uint64_t base_seed = 0;
  PhaseMode phase_mode = PhaseMode::kRandomComplex;
  PlacementMode placement = PlacementMode::kRandomMinGap;
  double grid_step_rl = 0.05;
  double refine_tol = 1e-10;
  int threads = 0;  // 0 = hardware concurrency
};

struct TrialSummary {
  std::vector<double> errors_rl;  // per-trial Hausdorff distance in RL units
  double mean_rl = 0.0;
  double median_rl = 0.0;
  double success_rate = 0.0;  // fraction with d < separation/2 and no flag
  int insufficiency_failures = 0;
};

// Draws a model per trial (placement + phase mode + dynamic range), runs the
// estimator, and scores Hausdorff error in Rayleigh lengths. An insufficiency
// flag scores the trial at the maximal torus distance 0.5*M RL.
TrialSummary run_trials(const TrialSpec& spec);

// Deterministic per-trial model draw used by run_trials (exposed for
// reproducibility checks and bound experiments).
struct DrawnModel {
  std::vector<double> frequencies;
  std::vector<std::complex<double>> amplitudes;
};

DrawnModel draw_model(const TrialSpec& spec, std::uint64_t trial_seed);

struct Candidate {
  double omega = 0.0;
  std::complex<double> amplitude;
};

// Greedy amplitude-ranked selection with an exclusion radius: repeatedly pick
// the largest |amplitude|, keep its omega, and zero every candidate within
// torus distance < radius of it; stops after `num_tones` picks or when all
// amplitudes are zero.
std::vector<double> band_excluded_threshold(std::vector<Candidate> candidates, int num_tones,
                                            double radius);

// Mean d(S, S_hat)/q per (separation, NSR) cell for clusters of `cluster_size`
// equally spaced tones with unit random-phase amplitudes, randomly positioned
// per trial.
struct PhaseGrid {
  std::vector<double> q_values_rl;  // ascending
  std::vector<double> nsr_values;   // ascending
  int cluster_size = 2;             // R*
  int data_length = 100;
  int pencil = 50;
  int num_trials = 0;
  std::uint64_t base_seed = 0;
  Eigen::MatrixXd cell_stats;  // (nsr index, q index) -> mean d/q
};

PhaseGrid phase_transition(std::span<const double> q_values_rl,
                           std::span<const double> nsr_values, int cluster_size, int data_length,
                           int pencil, int num_trials, std::uint64_t base_seed, int threads = 0);

// Per column: critical NSR = highest tested NSR whose cell has mean d/q < 1/2.
// Columns without an interior transition (all-fail, or success saturating the
// top of the NSR grid) are flagged and excluded from the power-law fit.
struct TransitionCurve {
  std::vector<double> q_values_rl;
  std::vector<double> critical_nsr;  // NaN where the column never succeeds
  std::vector<bool> saturated;
  std::vector<bool> has_transition;
  double fitted_exponent = 0.0;
  double fitted_scale = 0.0;
};

TransitionCurve fit_transition(const PhaseGrid& grid);

// Least-squares fit y = scale * x^exponent in log-log coordinates.
// Returns {exponent, scale}; requires positive data and >= 2 points.
std::pair<double, double> fit_power_law(std::span<const double> x, std::span<const double> y);

// Report emission. Formats: any subset of {"csv", "json", "svg"}. Every file
// embeds `config_json` (CSV: leading "# config" comment; JSON: "config"
// field; SVG: <desc> element). Returns the paths written.
std::vector<std::filesystem::path> emit_phase_report(const std::filesystem::path& directory,
                                                     const PhaseGrid& grid,
                                                     const TransitionCurve* curve,
                                                     const std::string& config_json,
                                                     std::span<const std::string> formats);

std::vector<std::filesystem::path> emit_sweep_report(
    const std::filesystem::path& directory, const TrialSpec& spec,
    std::span<const double> nsr_values, std::span<const TrialSummary> summaries,
    const std::string& config_json, std::span<const std::string> formats);

// Re-ingests the JSON emitted by emit_phase_report.
PhaseGrid read_phase_grid_json(const std::filesystem::path& file);

}  // namespace ssmusic

#endif  // SSMUSIC_EXPERIMENTS_HPP
