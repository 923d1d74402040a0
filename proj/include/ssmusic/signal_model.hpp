#ifndef SSMUSIC_SIGNAL_MODEL_HPP
#define SSMUSIC_SIGNAL_MODEL_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ssmusic {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Reduces a frequency to the canonical torus representative in [0,1).
double torus_reduce(double omega);

// Torus metric d(a,b) = min_n |a+n-b|, value in [0, 0.5]. Inputs outside
// [0,1) are reduced first.
double torus_distance(double a, double b);

// Rayleigh length 1/M, the classical resolution unit.
double rayleigh_length(int data_length);

// phi^L(omega): entry k = exp(-2*pi*i*k*omega), k = 0..L. Norm sqrt(L+1).
Eigen::VectorXcd imaging_vector(double omega, int pencil);

// Entrywise derivative of given order: entry k = (-2*pi*i*k)^order * phi_k.
Eigen::VectorXcd imaging_vector_derivative(double omega, int pencil, int order);

// Ground-truth support on the torus with nonzero complex amplitudes.
// Frequencies are reduced mod 1 at construction and stored strictly
// increasing; duplicates (zero torus distance) are rejected.
class FrequencyModel {
 public:
  FrequencyModel(std::vector<double> frequencies,
                 std::vector<std::complex<double>> amplitudes);

  const std::vector<double>& frequencies() const { return frequencies_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
  int size() const { return static_cast<int>(frequencies_.size()); }

  // Minimum pairwise torus distance q (0.5 for a single tone).
  double min_gap() const;
  double min_abs_amplitude() const;
  double max_abs_amplitude() const;

 private:
  std::vector<double> frequencies_;
  std::vector<std::complex<double>> amplitudes_;
};

// Samples y_0..y_M at integer times t = 0..M.
struct Signal {
  Eigen::VectorXcd samples;

  int data_length() const { return static_cast<int>(samples.size()) - 1; }  // M
};

// Complex Gaussian noise: real and imaginary parts i.i.d. N(0, sigma^2) per
// component. Deterministic given seed.
struct NoiseSpec {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// y_k = sum_j x_j exp(-2*pi*i*k*omega_j), k = 0..M.
Signal synthesize(const FrequencyModel& model, int data_length);

Signal add_noise(const Signal& clean, const NoiseSpec& spec);

// Noise-to-signal ratio sigma*sqrt(2(M+1))/||y||_2. Throws std::domain_error
// on a zero-norm signal.
double nsr(const Signal& clean, const NoiseSpec& spec);

// Inverse of nsr: the sigma achieving the requested ratio.
double sigma_for_nsr(const Signal& clean, double target_nsr);

// Symmetric max-min torus distance between two nonempty frequency sets.
double hausdorff(std::span<const double> estimated, std::span<const double> truth);

}  // namespace ssmusic

#endif  // SSMUSIC_SIGNAL_MODEL_HPP
