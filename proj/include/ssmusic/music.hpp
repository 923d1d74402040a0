#ifndef SSMUSIC_MUSIC_HPP
#define SSMUSIC_MUSIC_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "ssmusic/hankel_subspace.hpp"
#include "ssmusic/signal_model.hpp"

namespace ssmusic {

inline constexpr double kDefaultGridStepRl = 0.05;
inline constexpr double kDefaultRefineTol = 1e-10;

// Sentinel for the imaging function where the correlation vanishes.
inline constexpr double kImagingFunctionCap = 1e18;

// Noise-space correlation R(omega) = ||U2^H phi^L(omega)||_2 / sqrt(L+1),
// clamped to [0,1].
double correlation_at(const SubspaceSplit& split, double omega);

// Pointwise R and J = 1/R over a uniform circular grid on [0,1).
struct CorrelationProfile {
  std::vector<double> grid;
  std::vector<double> r_values;
  std::vector<double> j_values;
};

// Grid of ceil(M / grid_step_rl) points; spacing <= grid_step_rl Rayleigh
// lengths.
CorrelationProfile scan_profile(const SubspaceSplit& split, double grid_step_rl);

struct EstimateResult {
  std::vector<double> frequencies;      // ascending
  std::vector<double> minima_values;    // refined R at each frequency
  std::vector<int> refinement_iterations;
  bool insufficient = false;            // fewer local minima than requested
};

// Strict local minima of R on the circular grid, each refined by
// golden-section search in its bracketing cell; keeps the s smallest refined
// values (ties broken toward smaller omega) and reports them sorted by omega.
EstimateResult extract_minima(const CorrelationProfile& profile, const SubspaceSplit& split,
                              int num_tones, double refine_tol);

// Full pipeline: Hankel matrix -> SVD split -> grid scan -> refined minima.
EstimateResult music_estimate(const Signal& noisy, int num_tones, int pencil,
                              double grid_step_rl = kDefaultGridStepRl,
                              double refine_tol = kDefaultRefineTol);

// Default pencil parameter floor(M/2).
EstimateResult music_estimate(const Signal& noisy, int num_tones);

struct AmplitudeSolution {
  std::vector<std::complex<double>> amplitudes;
  double residual_norm = 0.0;
  bool minimum_norm_fallback = false;  // rank-deficient system
};

// Least squares y ~ Phi^M(frequencies) * x via SVD (minimum-norm when the
// system is rank deficient).
AmplitudeSolution amplitude_solve(std::span<const double> frequencies, const Signal& signal);

// Second derivative of Q(omega) = R^2(omega):
//   Q''(omega) = [2 Re<P2 phi, P2 phi''> + 2 ||P2 phi'||^2] / (L+1)
// with analytic imaging-vector derivatives. At a true frequency of a
// noiseless split this reduces to 2 ||P2 phi'||^2 / (L+1).
double q_second_derivative(const SubspaceSplit& split, double omega);

// eta(L) = 2*pi*sqrt(sum k^2)/sqrt(L+1), zeta(L) = (2*pi)^2*sqrt(sum k^4)/
// sqrt(L+1), via closed-form power sums.
std::pair<double, double> eta_zeta(int pencil);

}  // namespace ssmusic

#endif  // SSMUSIC_MUSIC_HPP
