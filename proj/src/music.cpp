#include "ssmusic/music.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ssmusic {

namespace {

struct RefinedMinimum {
  double r = 0.0;
  double omega = 0.0;
  int iterations = 0;
};

// Golden-section search for the minimum of f on [a,b] (unwrapped omega
// coordinates; f reduces mod 1 itself). Stops when the bracket is shorter
// than tol.
template <typename F>
RefinedMinimum golden_section(F&& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = f(c);
  double fd = f(d);
  int iterations = 0;
  while (b - a > tol && iterations < 200) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = f(d);
    }
    ++iterations;
  }
  const double mid = 0.5 * (a + b);
  return RefinedMinimum{f(mid), torus_reduce(mid), iterations};
}

}  // namespace

double correlation_at(const SubspaceSplit& split, double omega) {
  const int pencil = split.pencil;
  const Eigen::VectorXcd phi = imaging_vector(omega, pencil);
  const double projected = (split.noise_basis.adjoint() * phi).norm();
  const double r = projected / std::sqrt(static_cast<double>(pencil + 1));
  return std::clamp(r, 0.0, 1.0);
}

CorrelationProfile scan_profile(const SubspaceSplit& split, double grid_step_rl) {
  if (grid_step_rl <= 0.0) throw std::invalid_argument("scan_profile: grid step must be > 0");
  const int n = static_cast<int>(std::ceil(split.data_length / grid_step_rl));
  CorrelationProfile profile;
  profile.grid.resize(n);
  profile.r_values.resize(n);
  profile.j_values.resize(n);
  for (int i = 0; i < n; ++i) {
    const double omega = static_cast<double>(i) / n;
    const double r = correlation_at(split, omega);
    profile.grid[i] = omega;
    profile.r_values[i] = r;
    profile.j_values[i] = r > 0.0 ? 1.0 / r : kImagingFunctionCap;
  }
  return profile;
}

EstimateResult extract_minima(const CorrelationProfile& profile, const SubspaceSplit& split,
                              int num_tones, double refine_tol) {
  if (num_tones < 1) throw std::invalid_argument("extract_minima: s must be >= 1");
  if (refine_tol <= 0.0) throw std::invalid_argument("extract_minima: tolerance must be > 0");
  const int n = static_cast<int>(profile.grid.size());
  if (n < 3) throw std::invalid_argument("extract_minima: profile too short");

  const double cell = 1.0 / n;
  auto r_of = [&](double omega) { return correlation_at(split, torus_reduce(omega)); };

  std::vector<RefinedMinimum> minima;
  for (int i = 0; i < n; ++i) {
    const double here = profile.r_values[i];
    const double left = profile.r_values[(i + n - 1) % n];
    const double right = profile.r_values[(i + 1) % n];
    if (here < left && here < right) {
      const double center = profile.grid[i];
      minima.push_back(golden_section(r_of, center - cell, center + cell, refine_tol));
    }
  }

  std::sort(minima.begin(), minima.end(), [](const RefinedMinimum& a, const RefinedMinimum& b) {
    return a.r != b.r ? a.r < b.r : a.omega < b.omega;
  });
  if (minima.size() > static_cast<std::size_t>(num_tones)) minima.resize(num_tones);
  std::sort(minima.begin(), minima.end(),
            [](const RefinedMinimum& a, const RefinedMinimum& b) { return a.omega < b.omega; });

  EstimateResult result;
  result.insufficient = minima.size() < static_cast<std::size_t>(num_tones);
  for (const auto& m : minima) {
    result.frequencies.push_back(m.omega);
    result.minima_values.push_back(m.r);
    result.refinement_iterations.push_back(m.iterations);
  }
  return result;
}

EstimateResult music_estimate(const Signal& noisy, int num_tones, int pencil,
                              double grid_step_rl, double refine_tol) {
  const HankelMatrix hankel = build_hankel(noisy, pencil);
  const SubspaceSplit split = subspace_split(hankel, num_tones);
  const CorrelationProfile profile = scan_profile(split, grid_step_rl);
  return extract_minima(profile, split, num_tones, refine_tol);
}

EstimateResult music_estimate(const Signal& noisy, int num_tones) {
  return music_estimate(noisy, num_tones, noisy.data_length() / 2);
}

AmplitudeSolution amplitude_solve(std::span<const double> frequencies, const Signal& signal) {
  if (frequencies.empty()) throw std::invalid_argument("amplitude_solve: empty estimate");
  const VandermondeMatrix design = build_vandermonde(frequencies, 0, signal.data_length());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(design.entries,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::VectorXcd x = svd.solve(signal.samples);

  AmplitudeSolution solution;
  solution.minimum_norm_fallback = svd.rank() < design.entries.cols();
  solution.residual_norm = (signal.samples - design.entries * x).norm();
  solution.amplitudes.assign(x.data(), x.data() + x.size());
  return solution;
}

double q_second_derivative(const SubspaceSplit& split, double omega) {
  const int pencil = split.pencil;
  const Eigen::VectorXcd phi = imaging_vector(omega, pencil);
  const Eigen::VectorXcd dphi = imaging_vector_derivative(omega, pencil, 1);
  const Eigen::VectorXcd ddphi = imaging_vector_derivative(omega, pencil, 2);
  const Eigen::VectorXcd a = split.noise_basis.adjoint() * phi;
  const Eigen::VectorXcd b = split.noise_basis.adjoint() * dphi;
  const Eigen::VectorXcd c = split.noise_basis.adjoint() * ddphi;
  const double cross = 2.0 * a.dot(c).real();
  return (cross + 2.0 * b.squaredNorm()) / static_cast<double>(pencil + 1);
}

std::pair<double, double> eta_zeta(int pencil) {
  if (pencil < 1) throw std::invalid_argument("eta_zeta: L must be >= 1");
  const double l = pencil;
  // sum k^2 = L(L+1)(2L+1)/6, sum k^4 = L(L+1)(2L+1)(3L^2+3L-1)/30; the
  // (L+1) factor cancels against the normalization.
  const double eta = kTwoPi * std::sqrt(l * (2.0 * l + 1.0) / 6.0);
  const double zeta =
      kTwoPi * kTwoPi * std::sqrt(l * (2.0 * l + 1.0) * (3.0 * l * l + 3.0 * l - 1.0) / 30.0);
  return {eta, zeta};
}

}  // namespace ssmusic
