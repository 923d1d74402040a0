#ifndef SSMUSIC_BOUNDS_HPP
#define SSMUSIC_BOUNDS_HPP

#include <complex>
#include <span>

namespace ssmusic {

// Minimum torus gap above which the Ingham lower bound is positive:
// (1/L) sqrt(2/pi) (2/pi - 4/L)^{-1/2}. Throws std::domain_error when
// L <= 2*pi (the bound is vacuous there).
double gap_threshold(int pencil);

// Two-sided bounds on sigma^2(Phi^L)/L under the gap condition. Reports carry
// validity flags instead of erroring in vacuous regimes; the upper bound
// holds even when the gap flag is false.
struct InghamReport {
  int pencil = 0;
  double min_gap = 0.0;        // q
  double gap_threshold = 0.0;  // +inf when the threshold itself is vacuous
  bool gap_satisfied = false;
  double lower_per_l = 0.0;
  double upper_per_l = 0.0;
  bool even_branch = true;
};

InghamReport ingham_bounds(int pencil, double min_gap);

// Brute-force extremes sigma_min^2/L and sigma_max^2/L of Phi^{0->L} by dense
// SVD; sigma_min is the smallest singular value above 1e-10 * sigma_max.
struct SingularExtremes {
  double smin_sq_per_l = 0.0;
  double smax_sq_per_l = 0.0;
};

SingularExtremes vandermonde_extremes(std::span<const double> frequencies, int pencil);

// Explicit amplification factors combining the head/tail Vandermonde bounds
// (parity dispatch applied on each side). alpha2 is non-positive when either
// lower factor fails to be positive.
struct CorollaryAlphas {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  bool gap_ok = false;
  bool head_even = true;  // parity branch used for the L factor of alpha1
  bool tail_even = true;  // parity branch used for the M-L factor
};

CorollaryAlphas corollary_alphas(double xmin, double xmax, int pencil, int data_length,
                                 double min_gap);

// Uniform perturbation bound |R^eps - R| <= alpha ||E||_2 with
// alpha = (4 sigma_1 + 2 ||E||_2) / (sigma_s - ||E||_2)^2, applicable only
// while ||E||_2 < sigma_s.
struct PerturbationReport {
  double sigma1 = 0.0;
  double sigma_s = 0.0;
  double noise_norm = 0.0;
  double alpha = 0.0;
  double uniform_bound = 0.0;
  bool applicable = false;
};

PerturbationReport perturbation_bound(double sigma1, double sigma_s, double noise_norm);

// On-support bound 2 ||E||_2 / (xmin sigma_min((Phi^{M-L})^T) sqrt(L+1)).
double support_bound(double noise_norm, double xmin, double smin_phi_tail, int pencil);

// Right-hand side 4 alpha eta(L) ||E||_2 of the local-minimizer displacement
// bound.
double localizer_bound(double alpha, int pencil, double noise_norm);

// Upper bound B(R*rho, L) * R on sigma_max^2(Phi^L)/L under the weakened gap
// condition |omega_{j+R} - omega_j| > R*rho.
struct ClusterReport {
  int cluster_size = 0;  // R
  double rho = 0.0;
  double b_value = 0.0;
  double upper_per_l = 0.0;
  int rayleigh_index = 0;
};

ClusterReport cluster_upper_bound(int cluster_size, double rho, int pencil);

// Least R* >= 1 with omega_{j+R*} - omega_j > 2 R*/L for all j under the
// s-periodic extension (strict inequality). Falls back to s with the
// boundary flag set when no R* <= s qualifies.
struct RayleighIndex {
  int value = 0;
  bool boundary = false;
};

RayleighIndex rayleigh_index(std::span<const double> frequencies, int pencil);

// Fitted tolerance curve scale * q^exponent used to overlay phase-transition
// plots (q in Rayleigh lengths).
double superres_tolerance_model(double separation_rl, double exponent, double scale);

// Window g(t) = cos(pi (t - 0.5)) behind the discrete Ingham proof.
double ingham_window(double t);

// Trigonometric kernel G(omega) = sum_{k=0}^{L} g(k/L) e^{2 pi i k omega},
// evaluated by direct summation with the argument folded into [0,1) so that
// G(omega + n) == G(omega) exactly.
std::complex<double> ingham_kernel(int pencil, double omega);

}  // namespace ssmusic

#endif  // SSMUSIC_BOUNDS_HPP
