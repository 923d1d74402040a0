#include "ssmusic/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ssmusic/music.hpp"
#include "ssmusic/rng.hpp"
#include "ssmusic/signal_model.hpp"

namespace ssmusic {

namespace {

using nlohmann::json;

// Runs fn(0..count-1) across `threads` workers; each index writes only its
// own output slot, so results do not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::complex<double> draw_amplitude(PhaseMode mode, double magnitude, int index,
                                    CounterRng& rng) {
  switch (mode) {
    case PhaseMode::kRandomComplex:
      return std::polar(magnitude, kTwoPi * rng.uniform());
    case PhaseMode::kRealPositive:
      return {magnitude, 0.0};
    case PhaseMode::kAlternatingSign:
      return {index % 2 == 0 ? magnitude : -magnitude, 0.0};
  }
  return {magnitude, 0.0};
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  return out;
}

// Blue (low) -> green -> red (high) map for log2(mean d/q).
std::string heat_color(double value, double lo, double hi) {
  double t = hi > lo ? (value - lo) / (hi - lo) : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(255.0 * std::clamp(2.0 * t - 0.5, 0.0, 1.0));
  const int g = static_cast<int>(255.0 * (1.0 - std::fabs(2.0 * t - 1.0)));
  const int b = static_cast<int>(255.0 * std::clamp(1.5 - 2.0 * t, 0.0, 1.0));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

PhaseMode parse_phase_mode(const std::string& name) {
  if (name == "random-complex") return PhaseMode::kRandomComplex;
  if (name == "real-positive") return PhaseMode::kRealPositive;
  if (name == "alternating-sign") return PhaseMode::kAlternatingSign;
  throw std::invalid_argument("unknown phase mode: " + name);
}

std::string to_string(PhaseMode mode) {
  switch (mode) {
    case PhaseMode::kRandomComplex: return "random-complex";
    case PhaseMode::kRealPositive: return "real-positive";
    case PhaseMode::kAlternatingSign: return "alternating-sign";
  }
  return "random-complex";
}

PlacementMode parse_placement_mode(const std::string& name) {
  if (name == "equispaced") return PlacementMode::kEquispaced;
  if (name == "random-min-gap") return PlacementMode::kRandomMinGap;
  throw std::invalid_argument("unknown placement mode: " + name);
}

std::string to_string(PlacementMode mode) {
  return mode == PlacementMode::kEquispaced ? "equispaced" : "random-min-gap";
}

DrawnModel draw_model(const TrialSpec& spec, std::uint64_t trial_seed) {
  const double gap = spec.separation_rl * rayleigh_length(spec.data_length);
  const int s = spec.num_tones;
  CounterRng rng(CounterRng::derive(trial_seed, 0));

  DrawnModel model;
  model.frequencies.resize(s);
  if (spec.placement == PlacementMode::kEquispaced) {
    if ((s - 1) * gap >= 1.0) {
      throw std::invalid_argument("draw_model: equispaced tones do not fit on the torus");
    }
    const double offset = rng.uniform();
    for (int j = 0; j < s; ++j) model.frequencies[j] = torus_reduce(offset + j * gap);
  } else {
    if (s * gap >= 0.8) {
      throw std::invalid_argument(
          "draw_model: rejection sampling infeasible, reduce s or the separation");
    }
    constexpr long kMaxAttempts = 20'000'000;
    long attempt = 0;
    while (true) {
      if (++attempt > kMaxAttempts) {
        throw std::runtime_error("draw_model: separation constraint not met after max attempts");
      }
      for (int j = 0; j < s; ++j) model.frequencies[j] = rng.uniform();
      std::sort(model.frequencies.begin(), model.frequencies.end());
      double min_gap = 1.0;
      for (int j = 0; j < s; ++j) {
        const double next = j + 1 < s ? model.frequencies[j + 1] : model.frequencies[0] + 1.0;
        min_gap = std::min(min_gap, next - model.frequencies[j]);
      }
      if (s == 1 || min_gap >= gap) break;
    }
  }

  model.amplitudes.resize(s);
  CounterRng amp_rng(CounterRng::derive(trial_seed, 1));
  for (int j = 0; j < s; ++j) {
    // Magnitudes log-uniform over [1, dynamic_range].
    const double magnitude =
        spec.dynamic_range > 1.0 ? std::exp(amp_rng.uniform() * std::log(spec.dynamic_range))
                                 : 1.0;
    model.amplitudes[j] = draw_amplitude(spec.phase_mode, magnitude, j, amp_rng);
  }
  return model;
}

TrialSummary run_trials(const TrialSpec& spec) {
  if (spec.num_trials < 1) throw std::invalid_argument("run_trials: need n_trials >= 1");
  if (!(spec.separation_rl > 0.0)) {
    throw std::invalid_argument("run_trials: separation must be > 0");
  }
  if (spec.dynamic_range < 1.0) {
    throw std::invalid_argument("run_trials: dynamic range must be >= 1");
  }

  TrialSummary summary;
  summary.errors_rl.resize(spec.num_trials);
  std::vector<char> flagged(spec.num_trials, 0);

  parallel_for(spec.num_trials, spec.threads, [&](std::size_t t) {
    const std::uint64_t trial_seed = spec.base_seed + t;
    const DrawnModel drawn = draw_model(spec, trial_seed);
    const FrequencyModel model(drawn.frequencies, drawn.amplitudes);
    const Signal clean = synthesize(model, spec.data_length);
    Signal observed = clean;
    if (spec.nsr > 0.0) {
      const double sigma = sigma_for_nsr(clean, spec.nsr);
      observed = add_noise(clean, NoiseSpec{sigma, CounterRng::derive(trial_seed, 2)});
    }
    const EstimateResult estimate = music_estimate(observed, spec.num_tones, spec.pencil,
                                                   spec.grid_step_rl, spec.refine_tol);
    if (estimate.insufficient) {
      flagged[t] = 1;
      summary.errors_rl[t] = 0.5 * spec.data_length;  // max torus distance in RL
      return;
    }
    summary.errors_rl[t] =
        hausdorff(estimate.frequencies, model.frequencies()) * spec.data_length;
  });

  summary.insufficiency_failures =
      static_cast<int>(std::count(flagged.begin(), flagged.end(), 1));
  summary.mean_rl = std::accumulate(summary.errors_rl.begin(), summary.errors_rl.end(), 0.0) /
                    spec.num_trials;
  summary.median_rl = median_of(summary.errors_rl);
  int successes = 0;
  for (int t = 0; t < spec.num_trials; ++t) {
    if (!flagged[t] && summary.errors_rl[t] < 0.5 * spec.separation_rl) ++successes;
  }
  summary.success_rate = static_cast<double>(successes) / spec.num_trials;
  return summary;
}

std::vector<double> band_excluded_threshold(std::vector<Candidate> candidates, int num_tones,
                                            double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("band_excluded_threshold: radius must be > 0");
  std::vector<double> selected;
  for (int picked = 0; picked < num_tones; ++picked) {
    std::size_t best = candidates.size();
    double best_mag = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double mag = std::abs(candidates[i].amplitude);
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best == candidates.size()) break;  // all amplitudes zero
    const double pick = candidates[best].omega;
    selected.push_back(pick);
    for (auto& c : candidates) {
      if (torus_distance(c.omega, pick) < radius) c.amplitude = 0.0;
    }
  }
  return selected;
}

PhaseGrid phase_transition(std::span<const double> q_values_rl,
                           std::span<const double> nsr_values, int cluster_size, int data_length,
                           int pencil, int num_trials, std::uint64_t base_seed, int threads) {
  if (cluster_size < 2 || cluster_size > 5) {
    throw std::invalid_argument("phase_transition: R* must be in {2,3,4,5}");
  }
  if (q_values_rl.empty() || nsr_values.empty() || num_trials < 1) {
    throw std::invalid_argument("phase_transition: empty grid");
  }
  if (!std::is_sorted(nsr_values.begin(), nsr_values.end()) ||
      !std::is_sorted(q_values_rl.begin(), q_values_rl.end())) {
    throw std::invalid_argument("phase_transition: grids must be ascending");
  }

  PhaseGrid grid;
  grid.q_values_rl.assign(q_values_rl.begin(), q_values_rl.end());
  grid.nsr_values.assign(nsr_values.begin(), nsr_values.end());
  grid.cluster_size = cluster_size;
  grid.data_length = data_length;
  grid.pencil = pencil;
  grid.num_trials = num_trials;
  grid.base_seed = base_seed;

  const std::size_t num_q = q_values_rl.size();
  const std::size_t num_nsr = nsr_values.size();
  const std::size_t tasks = num_q * num_nsr * static_cast<std::size_t>(num_trials);
  std::vector<double> ratios(tasks, 0.0);

  parallel_for(tasks, threads, [&](std::size_t task) {
    const std::size_t t = task % num_trials;
    const std::size_t cell = task / num_trials;
    const std::size_t qi = cell / num_nsr;
    const std::size_t ni = cell % num_nsr;
    const double q = q_values_rl[qi] * rayleigh_length(data_length);
    const double target_nsr = nsr_values[ni];
    const std::uint64_t trial_seed = base_seed + cell * num_trials + t;

    CounterRng rng(CounterRng::derive(trial_seed, 0));
    const double offset = rng.uniform();
    std::vector<double> freqs(cluster_size);
    std::vector<std::complex<double>> amps(cluster_size);
    for (int j = 0; j < cluster_size; ++j) {
      freqs[j] = torus_reduce(offset + j * q);
      amps[j] = std::polar(1.0, kTwoPi * rng.uniform());
    }
    const FrequencyModel model(freqs, amps);
    const Signal clean = synthesize(model, data_length);
    const double sigma = sigma_for_nsr(clean, target_nsr);
    const Signal observed =
        add_noise(clean, NoiseSpec{sigma, CounterRng::derive(trial_seed, 2)});
    const EstimateResult estimate = music_estimate(observed, cluster_size, pencil);
    const double d = estimate.insufficient
                         ? 0.5
                         : hausdorff(estimate.frequencies, model.frequencies());
    ratios[task] = d / q;
  });

  grid.cell_stats.resize(static_cast<Eigen::Index>(num_nsr), static_cast<Eigen::Index>(num_q));
  for (std::size_t qi = 0; qi < num_q; ++qi) {
    for (std::size_t ni = 0; ni < num_nsr; ++ni) {
      const std::size_t cell = qi * num_nsr + ni;
      double total = 0.0;
      for (int t = 0; t < num_trials; ++t) total += ratios[cell * num_trials + t];
      grid.cell_stats(static_cast<Eigen::Index>(ni), static_cast<Eigen::Index>(qi)) =
          total / num_trials;
    }
  }
  return grid;
}

TransitionCurve fit_transition(const PhaseGrid& grid) {
  TransitionCurve curve;
  curve.q_values_rl = grid.q_values_rl;
  const std::size_t num_q = grid.q_values_rl.size();
  const std::size_t num_nsr = grid.nsr_values.size();
  curve.critical_nsr.assign(num_q, std::numeric_limits<double>::quiet_NaN());
  curve.saturated.assign(num_q, false);
  curve.has_transition.assign(num_q, false);

  std::vector<double> fit_q;
  std::vector<double> fit_nsr;
  for (std::size_t qi = 0; qi < num_q; ++qi) {
    std::ptrdiff_t highest = -1;
    for (std::size_t ni = 0; ni < num_nsr; ++ni) {
      if (grid.cell_stats(static_cast<Eigen::Index>(ni), static_cast<Eigen::Index>(qi)) < 0.5) {
        highest = static_cast<std::ptrdiff_t>(ni);
      }
    }
    if (highest < 0) continue;  // no success anywhere: no transition
    curve.critical_nsr[qi] = grid.nsr_values[highest];
    if (highest == static_cast<std::ptrdiff_t>(num_nsr) - 1) {
      curve.saturated[qi] = true;  // success reaches the top of the grid
      continue;
    }
    curve.has_transition[qi] = true;
    fit_q.push_back(grid.q_values_rl[qi]);
    fit_nsr.push_back(curve.critical_nsr[qi]);
  }

  if (fit_q.size() < 3) {
    throw std::domain_error("fit_transition: fewer than 3 columns with a detected transition");
  }
  const auto [exponent, scale] = fit_power_law(fit_q, fit_nsr);
  curve.fitted_exponent = exponent;
  curve.fitted_scale = scale;
  return curve;
}

std::pair<double, double> fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_power_law: need >= 2 paired points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::domain_error("fit_power_law: data must be positive");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::domain_error("fit_power_law: degenerate abscissae");
  const double exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - exponent * sx) / n;
  return {exponent, std::exp(intercept)};
}

namespace {

json grid_to_json(const PhaseGrid& grid) {
  json cells = json::array();
  for (Eigen::Index ni = 0; ni < grid.cell_stats.rows(); ++ni) {
    json row = json::array();
    for (Eigen::Index qi = 0; qi < grid.cell_stats.cols(); ++qi) {
      row.push_back(grid.cell_stats(ni, qi));
    }
    cells.push_back(row);
  }
  return json{{"q_values_rl", grid.q_values_rl},
              {"nsr_values", grid.nsr_values},
              {"cluster_size", grid.cluster_size},
              {"M", grid.data_length},
              {"L", grid.pencil},
              {"n_trials", grid.num_trials},
              {"base_seed", grid.base_seed},
              {"mean_d_over_q", cells}};
}

void write_phase_svg(const std::filesystem::path& path, const PhaseGrid& grid,
                     const TransitionCurve* curve, const std::string& config_json) {
  const int cell_px = 28;
  const int margin = 70;
  const int num_q = static_cast<int>(grid.q_values_rl.size());
  const int num_nsr = static_cast<int>(grid.nsr_values.size());
  const int width = margin * 2 + cell_px * num_q;
  const int height = margin * 2 + cell_px * num_nsr;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index ni = 0; ni < grid.cell_stats.rows(); ++ni) {
    for (Eigen::Index qi = 0; qi < grid.cell_stats.cols(); ++qi) {
      const double v = std::log2(std::max(grid.cell_stats(ni, qi), 1e-12));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  out << "<desc>" << xml_escape(config_json) << "</desc>\n";
  out << "<text x=\"" << margin << "\" y=\"" << margin - 30
      << "\" font-size=\"13\">mean d/q (log2 color), cluster size " << grid.cluster_size
      << "</text>\n";
  // NSR rows are drawn bottom-up so the y axis increases upward.
  for (int ni = 0; ni < num_nsr; ++ni) {
    for (int qi = 0; qi < num_q; ++qi) {
      const double v = std::log2(std::max(grid.cell_stats(ni, qi), 1e-12));
      const int x = margin + qi * cell_px;
      const int y = margin + (num_nsr - 1 - ni) * cell_px;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_px << "\" height=\""
          << cell_px << "\" fill=\"" << heat_color(v, lo, hi) << "\"/>\n";
    }
  }
  if (curve != nullptr) {
    for (int qi = 0; qi < num_q; ++qi) {
      if (!curve->has_transition[qi] && !curve->saturated[qi]) continue;
      const double crit = curve->critical_nsr[qi];
      const auto it =
          std::find(grid.nsr_values.begin(), grid.nsr_values.end(), crit);
      if (it == grid.nsr_values.end()) continue;
      const int ni = static_cast<int>(it - grid.nsr_values.begin());
      const int x = margin + qi * cell_px;
      const int y = margin + (num_nsr - 1 - ni) * cell_px;
      out << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + cell_px << "\" y2=\""
          << y << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
    }
  }
  for (int qi = 0; qi < num_q; ++qi) {
    out << "<text x=\"" << margin + qi * cell_px + 4 << "\" y=\"" << height - margin + 16
        << "\" font-size=\"10\">" << grid.q_values_rl[qi] << "</text>\n";
  }
  for (int ni = 0; ni < num_nsr; ++ni) {
    out << "<text x=\"4\" y=\"" << margin + (num_nsr - 1 - ni) * cell_px + 16
        << "\" font-size=\"9\">" << grid.nsr_values[ni] << "</text>\n";
  }
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 8
      << "\" font-size=\"12\">separation (RL)</text>\n";
  out << "</svg>\n";
}

void write_sweep_svg(const std::filesystem::path& path, std::span<const double> nsr_values,
                     std::span<const TrialSummary> summaries, const std::string& config_json) {
  const int width = 520;
  const int height = 360;
  const int margin = 60;
  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  out << "<desc>" << xml_escape(config_json) << "</desc>\n";
  double max_err = 0.0;
  for (const auto& s : summaries) max_err = std::max(max_err, s.mean_rl);
  if (max_err <= 0.0) max_err = 1.0;
  double max_nsr = 0.0;
  for (double v : nsr_values) max_nsr = std::max(max_nsr, v);
  if (max_nsr <= 0.0) max_nsr = 1.0;
  out << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const double x = margin + (width - 2 * margin) * (nsr_values[i] / max_nsr);
    const double y = height - margin - (height - 2 * margin) * (summaries[i].mean_rl / max_err);
    out << x << "," << y << " ";
  }
  out << "\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 16
      << "\" font-size=\"12\">NSR</text>\n";
  out << "<text x=\"10\" y=\"" << margin - 10 << "\" font-size=\"12\">mean error (RL)</text>\n";
  out << "</svg>\n";
}

}  // namespace

std::vector<std::filesystem::path> emit_phase_report(const std::filesystem::path& directory,
                                                     const PhaseGrid& grid,
                                                     const TransitionCurve* curve,
                                                     const std::string& config_json,
                                                     std::span<const std::string> formats) {
  std::filesystem::create_directories(directory);
  std::vector<std::filesystem::path> written;
  for (const auto& format : formats) {
    if (format == "csv") {
      const auto path = directory / "phase_grid.csv";
      auto out = open_out(path);
      out << "# config " << config_json << "\n";
      out << "q_rl,nsr,mean_d_over_q\n";
      for (Eigen::Index qi = 0; qi < grid.cell_stats.cols(); ++qi) {
        for (Eigen::Index ni = 0; ni < grid.cell_stats.rows(); ++ni) {
          out << grid.q_values_rl[qi] << "," << grid.nsr_values[ni] << ","
              << grid.cell_stats(ni, qi) << "\n";
        }
      }
      written.push_back(path);
    } else if (format == "json") {
      const auto path = directory / "phase_summary.json";
      json doc;
      doc["config"] = json::parse(config_json);
      doc["grid"] = grid_to_json(grid);
      if (curve != nullptr) {
        doc["transition"] = {{"q_values_rl", curve->q_values_rl},
                             {"critical_nsr", curve->critical_nsr},
                             {"saturated", curve->saturated},
                             {"has_transition", curve->has_transition},
                             {"fitted_exponent", curve->fitted_exponent},
                             {"fitted_scale", curve->fitted_scale}};
      }
      auto out = open_out(path);
      out << doc.dump(2) << "\n";
      written.push_back(path);
    } else if (format == "svg") {
      const auto path = directory / "phase_grid.svg";
      write_phase_svg(path, grid, curve, config_json);
      written.push_back(path);
    } else {
      throw std::invalid_argument("emit_phase_report: unknown format " + format);
    }
  }
  return written;
}

std::vector<std::filesystem::path> emit_sweep_report(
    const std::filesystem::path& directory, const TrialSpec& spec,
    std::span<const double> nsr_values, std::span<const TrialSummary> summaries,
    const std::string& config_json, std::span<const std::string> formats) {
  if (nsr_values.size() != summaries.size() || summaries.empty()) {
    throw std::invalid_argument("emit_sweep_report: one summary per NSR value required");
  }
  std::filesystem::create_directories(directory);
  std::vector<std::filesystem::path> written;
  for (const auto& format : formats) {
    if (format == "csv") {
      const auto path = directory / "sweep_trials.csv";
      auto out = open_out(path);
      out << "# config " << config_json << "\n";
      out << "nsr,trial,seed,error_rl\n";
      for (std::size_t i = 0; i < summaries.size(); ++i) {
        for (std::size_t t = 0; t < summaries[i].errors_rl.size(); ++t) {
          out << nsr_values[i] << "," << t << "," << spec.base_seed + t << ","
              << summaries[i].errors_rl[t] << "\n";
        }
      }
      written.push_back(path);
    } else if (format == "json") {
      const auto path = directory / "sweep_summary.json";
      json rows = json::array();
      for (std::size_t i = 0; i < summaries.size(); ++i) {
        rows.push_back({{"nsr", nsr_values[i]},
                        {"mean_rl", summaries[i].mean_rl},
                        {"median_rl", summaries[i].median_rl},
                        {"success_rate", summaries[i].success_rate},
                        {"insufficiency_failures", summaries[i].insufficiency_failures},
                        {"errors_rl", summaries[i].errors_rl}});
      }
      json doc;
      doc["config"] = json::parse(config_json);
      doc["spec"] = {{"M", spec.data_length},
                     {"L", spec.pencil},
                     {"s", spec.num_tones},
                     {"separation_rl", spec.separation_rl},
                     {"dynamic_range", spec.dynamic_range},
                     {"n_trials", spec.num_trials},
                     {"base_seed", spec.base_seed},
                     {"phase_mode", to_string(spec.phase_mode)},
                     {"placement", to_string(spec.placement)},
                     {"grid_step_rl", spec.grid_step_rl},
                     {"refine_tol", spec.refine_tol}};
      doc["sweep"] = rows;
      auto out = open_out(path);
      out << doc.dump(2) << "\n";
      written.push_back(path);
    } else if (format == "svg") {
      const auto path = directory / "sweep_error.svg";
      write_sweep_svg(path, nsr_values, summaries, config_json);
      written.push_back(path);
    } else {
      throw std::invalid_argument("emit_sweep_report: unknown format " + format);
    }
  }
  return written;
}

PhaseGrid read_phase_grid_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  json doc = json::parse(in);
  const json& g = doc.at("grid");
  PhaseGrid grid;
  grid.q_values_rl = g.at("q_values_rl").get<std::vector<double>>();
  grid.nsr_values = g.at("nsr_values").get<std::vector<double>>();
  grid.cluster_size = g.at("cluster_size").get<int>();
  grid.data_length = g.at("M").get<int>();
  grid.pencil = g.at("L").get<int>();
  grid.num_trials = g.at("n_trials").get<int>();
  grid.base_seed = g.at("base_seed").get<std::uint64_t>();
  const json& cells = g.at("mean_d_over_q");
  grid.cell_stats.resize(static_cast<Eigen::Index>(grid.nsr_values.size()),
                         static_cast<Eigen::Index>(grid.q_values_rl.size()));
  for (Eigen::Index ni = 0; ni < grid.cell_stats.rows(); ++ni) {
    for (Eigen::Index qi = 0; qi < grid.cell_stats.cols(); ++qi) {
      grid.cell_stats(ni, qi) = cells.at(ni).at(qi).get<double>();
    }
  }
  return grid;
}

}  // namespace ssmusic
