#include "ssmusic/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ssmusic/rng.hpp"

namespace ssmusic {

double torus_reduce(double omega) {
  double r = omega - std::floor(omega);
  if (r >= 1.0) r = 0.0;  // e.g. omega = -1e-17 rounds up to 1.0
  return r;
}

double torus_distance(double a, double b) {
  const double d = std::fabs(torus_reduce(a) - torus_reduce(b));
  return std::min(d, 1.0 - d);
}

double rayleigh_length(int data_length) {
  if (data_length < 1) throw std::invalid_argument("rayleigh_length: M must be >= 1");
  return 1.0 / static_cast<double>(data_length);
}

Eigen::VectorXcd imaging_vector(double omega, int pencil) {
  if (pencil < 0) throw std::invalid_argument("imaging_vector: L must be >= 0");
  Eigen::VectorXcd phi(pencil + 1);
  for (int k = 0; k <= pencil; ++k) {
    phi[k] = std::polar(1.0, -kTwoPi * k * omega);
  }
  return phi;
}

Eigen::VectorXcd imaging_vector_derivative(double omega, int pencil, int order) {
  if (order < 1 || order > 2) {
    throw std::invalid_argument("imaging_vector_derivative: order must be 1 or 2");
  }
  Eigen::VectorXcd d(pencil + 1);
  for (int k = 0; k <= pencil; ++k) {
    const std::complex<double> base = std::polar(1.0, -kTwoPi * k * omega);
    const std::complex<double> factor(0.0, -kTwoPi * k);
    d[k] = (order == 1 ? factor : factor * factor) * base;
  }
  return d;
}

FrequencyModel::FrequencyModel(std::vector<double> frequencies,
                               std::vector<std::complex<double>> amplitudes)
    : frequencies_(std::move(frequencies)), amplitudes_(std::move(amplitudes)) {
  if (frequencies_.empty()) {
    throw std::invalid_argument("FrequencyModel: at least one frequency required");
  }
  if (frequencies_.size() != amplitudes_.size()) {
    throw std::invalid_argument("FrequencyModel: frequency/amplitude count mismatch");
  }
  for (const auto& x : amplitudes_) {
    if (x == std::complex<double>(0.0, 0.0)) {
      throw std::invalid_argument("FrequencyModel: amplitudes must be nonzero");
    }
  }
  for (double& w : frequencies_) w = torus_reduce(w);

  // Sort frequencies, carrying amplitudes along.
  std::vector<std::size_t> order(frequencies_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frequencies_[a] < frequencies_[b]; });
  std::vector<double> f(frequencies_.size());
  std::vector<std::complex<double>> x(amplitudes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    f[i] = frequencies_[order[i]];
    x[i] = amplitudes_[order[i]];
  }
  frequencies_ = std::move(f);
  amplitudes_ = std::move(x);

  const std::size_t s = frequencies_.size();
  for (std::size_t i = 0; s > 1 && i < s; ++i) {
    const double gap = torus_distance(frequencies_[i], frequencies_[(i + 1) % s]);
    if (gap <= 0.0) {
      throw std::invalid_argument("FrequencyModel: duplicate frequency on the torus");
    }
  }
}

double FrequencyModel::min_gap() const {
  const std::size_t s = frequencies_.size();
  if (s == 1) return 0.5;
  double q = 1.0;
  for (std::size_t i = 0; i < s; ++i) {
    q = std::min(q, torus_distance(frequencies_[i], frequencies_[(i + 1) % s]));
  }
  return q;
}

double FrequencyModel::min_abs_amplitude() const {
  double m = std::abs(amplitudes_.front());
  for (const auto& x : amplitudes_) m = std::min(m, std::abs(x));
  return m;
}

double FrequencyModel::max_abs_amplitude() const {
  double m = 0.0;
  for (const auto& x : amplitudes_) m = std::max(m, std::abs(x));
  return m;
}

Signal synthesize(const FrequencyModel& model, int data_length) {
  if (data_length < 0) throw std::invalid_argument("synthesize: M must be >= 0");
  Signal out;
  out.samples = Eigen::VectorXcd::Zero(data_length + 1);
  for (int j = 0; j < model.size(); ++j) {
    const double w = model.frequencies()[j];
    const std::complex<double> x = model.amplitudes()[j];
    for (int k = 0; k <= data_length; ++k) {
      out.samples[k] += x * std::polar(1.0, -kTwoPi * k * w);
    }
  }
  return out;
}

Signal add_noise(const Signal& clean, const NoiseSpec& spec) {
  if (spec.sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
  Signal out = clean;
  if (spec.sigma == 0.0) return out;
  CounterRng rng(spec.seed);
  for (Eigen::Index k = 0; k < out.samples.size(); ++k) {
    const double re = spec.sigma * rng.normal();
    const double im = spec.sigma * rng.normal();
    out.samples[k] += std::complex<double>(re, im);
  }
  return out;
}

double nsr(const Signal& clean, const NoiseSpec& spec) {
  if (spec.sigma < 0.0) throw std::invalid_argument("nsr: sigma must be >= 0");
  const double norm = clean.samples.norm();
  if (norm == 0.0) throw std::domain_error("nsr: zero-norm signal");
  return spec.sigma * std::sqrt(2.0 * (clean.data_length() + 1)) / norm;
}

double sigma_for_nsr(const Signal& clean, double target_nsr) {
  if (target_nsr < 0.0) throw std::invalid_argument("sigma_for_nsr: target must be >= 0");
  const double norm = clean.samples.norm();
  if (norm == 0.0) throw std::domain_error("sigma_for_nsr: zero-norm signal");
  return target_nsr * norm / std::sqrt(2.0 * (clean.data_length() + 1));
}

double hausdorff(std::span<const double> estimated, std::span<const double> truth) {
  if (estimated.empty() || truth.empty()) {
    throw std::domain_error("hausdorff: frequency sets must be nonempty");
  }
  auto directed = [](std::span<const double> from, std::span<const double> to) {
    double worst = 0.0;
    for (double a : from) {
      double best = 0.5;
      for (double b : to) best = std::min(best, torus_distance(a, b));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(estimated, truth), directed(truth, estimated));
}

}  // namespace ssmusic
