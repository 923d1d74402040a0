#include "ssmusic/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/SVD>

#include "ssmusic/hankel_subspace.hpp"
#include "ssmusic/music.hpp"
#include "ssmusic/signal_model.hpp"

namespace ssmusic {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

double gap_threshold_or_inf(int pencil) {
  const double l = pencil;
  const double margin = 2.0 / kPi - 4.0 / l;
  if (margin <= 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(2.0 / kPi) / (l * std::sqrt(margin));
}

double lower_factor(int pencil, double q) {
  const double l = pencil;
  return 2.0 / kPi - 2.0 / (kPi * l * l * q * q) - 4.0 / l;
}

// Even-L upper factor; odd L routes through the even case at L+1.
double upper_factor(int pencil, double q) {
  const double l = pencil;
  if (pencil % 2 == 0) {
    return 4.0 * kSqrt2 / kPi + kSqrt2 / (kPi * l * l * q * q) + 3.0 * kSqrt2 / l;
  }
  const double lp = l + 1.0;
  return (1.0 + 1.0 / l) *
         (4.0 * kSqrt2 / kPi + kSqrt2 / (kPi * lp * lp * q * q) + 3.0 * kSqrt2 / lp);
}

}  // namespace

double gap_threshold(int pencil) {
  if (pencil <= 2.0 * kPi) {
    throw std::domain_error("gap_threshold: bound vacuous for L <= 2*pi");
  }
  return gap_threshold_or_inf(pencil);
}

InghamReport ingham_bounds(int pencil, double min_gap) {
  if (pencil < 3) throw std::invalid_argument("ingham_bounds: L must be >= 3");
  if (!(min_gap > 0.0) || min_gap > 0.5) {
    throw std::invalid_argument("ingham_bounds: q must lie in (0, 0.5]");
  }
  InghamReport report;
  report.pencil = pencil;
  report.min_gap = min_gap;
  report.gap_threshold = gap_threshold_or_inf(pencil);
  report.gap_satisfied = min_gap > report.gap_threshold;
  report.lower_per_l = lower_factor(pencil, min_gap);
  report.upper_per_l = upper_factor(pencil, min_gap);
  report.even_branch = pencil % 2 == 0;
  return report;
}

SingularExtremes vandermonde_extremes(std::span<const double> frequencies, int pencil) {
  if (frequencies.empty()) {
    throw std::invalid_argument("vandermonde_extremes: empty frequency set");
  }
  if (pencil < 1) throw std::invalid_argument("vandermonde_extremes: L must be >= 1");
  const VandermondeMatrix v = build_vandermonde(frequencies, 0, pencil);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(v.entries);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv[0];
  SingularExtremes out;
  if (smax == 0.0) return out;
  double smin = smax;
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    if (sv[j] > 1e-10 * smax) smin = sv[j];  // values are sorted descending
  }
  out.smax_sq_per_l = smax * smax / pencil;
  out.smin_sq_per_l = smin * smin / pencil;
  return out;
}

CorollaryAlphas corollary_alphas(double xmin, double xmax, int pencil, int data_length,
                                 double min_gap) {
  if (!(xmin > 0.0) || xmax < xmin) {
    throw std::invalid_argument("corollary_alphas: need 0 < xmin <= xmax");
  }
  const int tail = data_length - pencil;
  if (pencil < 3 || tail < 3) {
    throw std::invalid_argument("corollary_alphas: need L >= 3 and M-L >= 3");
  }
  CorollaryAlphas out;
  out.head_even = pencil % 2 == 0;
  out.tail_even = tail % 2 == 0;
  out.alpha1 = xmax * std::sqrt(upper_factor(pencil, min_gap) * upper_factor(tail, min_gap));
  const double low_head = lower_factor(pencil, min_gap);
  const double low_tail = lower_factor(tail, min_gap);
  const double product = low_head * low_tail;
  if (low_head > 0.0 && low_tail > 0.0) {
    out.alpha2 = xmin * std::sqrt(product);
  } else {
    out.alpha2 = -xmin * std::sqrt(std::fabs(product));
  }
  out.gap_ok =
      min_gap > std::max(gap_threshold_or_inf(pencil), gap_threshold_or_inf(tail));
  return out;
}

PerturbationReport perturbation_bound(double sigma1, double sigma_s, double noise_norm) {
  if (sigma_s < 0.0 || sigma1 < sigma_s) {
    throw std::invalid_argument("perturbation_bound: need sigma1 >= sigma_s >= 0");
  }
  if (noise_norm < 0.0) {
    throw std::invalid_argument("perturbation_bound: noise norm must be >= 0");
  }
  PerturbationReport report;
  report.sigma1 = sigma1;
  report.sigma_s = sigma_s;
  report.noise_norm = noise_norm;
  report.applicable = noise_norm < sigma_s;
  if (report.applicable) {
    const double margin = sigma_s - noise_norm;
    report.alpha = (4.0 * sigma1 + 2.0 * noise_norm) / (margin * margin);
    report.uniform_bound = report.alpha * noise_norm;
  } else {
    report.alpha = std::numeric_limits<double>::quiet_NaN();
    report.uniform_bound = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

double support_bound(double noise_norm, double xmin, double smin_phi_tail, int pencil) {
  if (!(xmin > 0.0) || !(smin_phi_tail > 0.0)) {
    throw std::domain_error("support_bound: xmin and sigma_min must be > 0");
  }
  if (noise_norm < 0.0) throw std::invalid_argument("support_bound: noise norm must be >= 0");
  return 2.0 * noise_norm / (xmin * smin_phi_tail * std::sqrt(pencil + 1.0));
}

double localizer_bound(double alpha, int pencil, double noise_norm) {
  if (alpha < 0.0 || noise_norm < 0.0) {
    throw std::invalid_argument("localizer_bound: inputs must be >= 0");
  }
  return 4.0 * alpha * eta_zeta(pencil).first * noise_norm;
}

ClusterReport cluster_upper_bound(int cluster_size, double rho, int pencil) {
  if (cluster_size < 1) throw std::invalid_argument("cluster_upper_bound: R must be >= 1");
  if (!(rho > 0.0)) throw std::invalid_argument("cluster_upper_bound: rho must be > 0");
  if (pencil < 3) throw std::invalid_argument("cluster_upper_bound: L must be >= 3");
  ClusterReport report;
  report.cluster_size = cluster_size;
  report.rho = rho;
  report.b_value = upper_factor(pencil, cluster_size * rho);
  report.upper_per_l = report.b_value * cluster_size;
  report.rayleigh_index = cluster_size;
  return report;
}

RayleighIndex rayleigh_index(std::span<const double> frequencies, int pencil) {
  if (frequencies.empty()) {
    throw std::invalid_argument("rayleigh_index: empty frequency set");
  }
  if (pencil < 1) throw std::invalid_argument("rayleigh_index: L must be >= 1");
  std::vector<double> sorted(frequencies.begin(), frequencies.end());
  std::sort(sorted.begin(), sorted.end());
  const int s = static_cast<int>(sorted.size());
  for (int candidate = 1; candidate <= s; ++candidate) {
    bool all_clear = true;
    for (int j = 0; j < s; ++j) {
      // Periodic extension: omega_{j+ks} = k + omega_j.
      const int wrapped = (j + candidate) % s;
      const int wraps = (j + candidate) / s;
      const double displacement = sorted[wrapped] + wraps - sorted[j];
      if (!(displacement > 2.0 * candidate / pencil)) {
        all_clear = false;
        break;
      }
    }
    if (all_clear) return RayleighIndex{candidate, false};
  }
  return RayleighIndex{s, true};
}

double superres_tolerance_model(double separation_rl, double exponent, double scale) {
  if (!(separation_rl > 0.0)) {
    throw std::invalid_argument("superres_tolerance_model: q must be > 0");
  }
  return scale * std::pow(separation_rl, exponent);
}

double ingham_window(double t) { return std::cos(kPi * (t - 0.5)); }

std::complex<double> ingham_kernel(int pencil, double omega) {
  if (pencil < 1) throw std::invalid_argument("ingham_kernel: L must be >= 1");
  // Extended-precision accumulation keeps the symmetry identities of the
  // kernel good to ~1e-12 even at L = 512.
  constexpr long double kPiL = 3.14159265358979323846264338327950288L;
  const long double folded = static_cast<long double>(torus_reduce(omega));
  long double re = 0.0L;
  long double im = 0.0L;
  for (int k = 0; k <= pencil; ++k) {
    const long double turns = k * folded;
    const long double phase = 2.0L * kPiL * (turns - std::floor(turns));
    const long double weight =
        std::cos(kPiL * (static_cast<long double>(k) / pencil - 0.5L));
    re += weight * std::cos(phase);
    im += weight * std::sin(phase);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace ssmusic
