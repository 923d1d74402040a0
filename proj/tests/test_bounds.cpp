#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ssmusic/bounds.hpp"
#include "ssmusic/hankel_subspace.hpp"
#include "ssmusic/music.hpp"
#include "ssmusic/rng.hpp"
#include "ssmusic/signal_model.hpp"

using namespace ssmusic;
using cd = std::complex<double>;

namespace {

// Frequencies with circular gaps >= min_gap, by stick-breaking over the slack.
std::vector<double> gapped_frequencies(CounterRng& rng, int count, double min_gap) {
  const double slack = 1.0 - count * min_gap;
  REQUIRE(slack > 0.0);
  std::vector<double> cuts(count);
  double total = 0.0;
  for (auto& c : cuts) {
    c = -std::log(1.0 - rng.uniform() * (1.0 - 1e-12));
    total += c;
  }
  std::vector<double> freqs(count);
  double position = rng.uniform();
  for (int j = 0; j < count; ++j) {
    freqs[j] = torus_reduce(position);
    position += min_gap + slack * cuts[j] / total;
  }
  return freqs;
}

}  // namespace

TEST_CASE("gap_threshold frozen values") {
  CHECK(gap_threshold(100) == doctest::Approx(0.0103297840026658).epsilon(1e-10));
  CHECK(gap_threshold(50) == doctest::Approx(0.0213890129028718).epsilon(1e-10));
  // threshold * L -> 1 from above
  CHECK(gap_threshold(100000) * 100000 == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(gap_threshold(6), std::domain_error);
}

TEST_CASE("ingham_bounds frozen values and parity dispatch") {
  const InghamReport low = ingham_bounds(100, 0.03);
  CHECK(low.lower_per_l == doctest::Approx(0.5258842421045167).epsilon(1e-10));
  CHECK(low.gap_satisfied);
  CHECK(low.even_branch);
  CHECK(low.lower_per_l > 0.0);

  const InghamReport up = ingham_bounds(100, 0.02);
  CHECK(up.upper_per_l == doctest::Approx(1.9555985787050432).epsilon(1e-10));

  const InghamReport odd = ingham_bounds(101, 0.03);
  CHECK_FALSE(odd.even_branch);
  CHECK(odd.upper_per_l == doctest::Approx(1.9090183447759292).epsilon(1e-10));
  CHECK(odd.lower_per_l == doctest::Approx(0.5276740511019558).epsilon(1e-10));

  // gap flag consistency: satisfied iff lower bound positive
  CounterRng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int pencil = 7 + static_cast<int>(rng.uniform() * 100);
    const double q = 0.001 + rng.uniform() * 0.499;
    const InghamReport report = ingham_bounds(pencil, q);
    CHECK(report.gap_satisfied == (report.min_gap > report.gap_threshold));
    if (report.gap_satisfied) CHECK(report.lower_per_l > 0.0);
    if (report.lower_per_l > 0.0) CHECK(report.gap_satisfied);
  }

  // small L never satisfies the gap but still reports
  const InghamReport vacuous = ingham_bounds(4, 0.4);
  CHECK_FALSE(vacuous.gap_satisfied);
  CHECK(std::isinf(vacuous.gap_threshold));

  CHECK_THROWS_AS(ingham_bounds(2, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(ingham_bounds(100, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ingham_bounds(100, 0.6), std::invalid_argument);
}

TEST_CASE("vandermonde_extremes oracle basics") {
  const std::vector<double> single{0.37};
  const SingularExtremes one = vandermonde_extremes(single, 8);
  CHECK(one.smin_sq_per_l == doctest::Approx(9.0 / 8.0).epsilon(1e-12));
  CHECK(one.smax_sq_per_l == doctest::Approx(9.0 / 8.0).epsilon(1e-12));

  const std::vector<double> pair{0.0, 0.5};
  const SingularExtremes two = vandermonde_extremes(pair, 1);
  CHECK(two.smin_sq_per_l == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(two.smax_sq_per_l == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("sandwich property on gap-satisfying sets (quick version)") {
  CounterRng rng(19);
  for (int pencil : {32, 33}) {
    const double threshold = gap_threshold(pencil);
    for (int trial = 0; trial < 20; ++trial) {
      const int s = 2 + static_cast<int>(rng.uniform() * 6);
      const double target = threshold * (1.05 + rng.uniform());
      if (s * target >= 0.9) continue;
      const std::vector<double> freqs = gapped_frequencies(rng, s, target);

      double q = 1.0;
      for (std::size_t i = 0; i < freqs.size(); ++i) {
        for (std::size_t j = i + 1; j < freqs.size(); ++j) {
          q = std::min(q, torus_distance(freqs[i], freqs[j]));
        }
      }
      const InghamReport bounds = ingham_bounds(pencil, q);
      REQUIRE(bounds.gap_satisfied);
      const SingularExtremes oracle = vandermonde_extremes(freqs, pencil);
      CHECK(oracle.smin_sq_per_l >= bounds.lower_per_l - 1e-9);
      CHECK(oracle.smax_sq_per_l <= bounds.upper_per_l + 1e-9);
    }
  }
}

TEST_CASE("upper bound holds even when the gap condition fails") {
  CounterRng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int pencil = 24 + trial;
    // clustered pair well below the threshold
    const double q = 0.2 * gap_threshold(pencil);
    const double base = rng.uniform();
    const std::vector<double> freqs{torus_reduce(base), torus_reduce(base + q),
                                    torus_reduce(base + 0.4)};
    const InghamReport bounds = ingham_bounds(pencil, q);
    CHECK_FALSE(bounds.gap_satisfied);
    const SingularExtremes oracle = vandermonde_extremes(freqs, pencil);
    CHECK(oracle.smax_sq_per_l <= bounds.upper_per_l + 1e-9);
  }
}

TEST_CASE("corollary_alphas") {
  const CorollaryAlphas symmetric = corollary_alphas(1.0, 1.0, 100, 200, 0.03);
  CHECK(symmetric.alpha2 == doctest::Approx(0.5258842421045167).epsilon(1e-10));
  CHECK(symmetric.gap_ok);
  CHECK(symmetric.head_even);
  CHECK(symmetric.tail_even);

  // homogeneity in the amplitudes
  const CorollaryAlphas scaled = corollary_alphas(3.0, 3.0, 100, 200, 0.03);
  CHECK(scaled.alpha1 == doctest::Approx(3.0 * symmetric.alpha1).epsilon(1e-12));
  CHECK(scaled.alpha2 == doctest::Approx(3.0 * symmetric.alpha2).epsilon(1e-12));

  // below the threshold the flag drops and alpha2 is reported non-positive
  const CorollaryAlphas vacuous = corollary_alphas(1.0, 1.0, 100, 200, 0.005);
  CHECK_FALSE(vacuous.gap_ok);
  CHECK(vacuous.alpha2 <= 0.0);

  const CorollaryAlphas odd = corollary_alphas(1.0, 2.0, 101, 202, 0.03);
  CHECK_FALSE(odd.head_even);
  CHECK_FALSE(odd.tail_even);

  CHECK_THROWS_AS(corollary_alphas(0.0, 1.0, 100, 200, 0.03), std::invalid_argument);
  CHECK_THROWS_AS(corollary_alphas(1.0, 1.0, 100, 102, 0.03), std::invalid_argument);
}

TEST_CASE("perturbation_bound") {
  const PerturbationReport report = perturbation_bound(10.0, 5.0, 1.0);
  CHECK(report.applicable);
  CHECK(report.alpha == doctest::Approx(2.625).epsilon(1e-14));  // 42/16
  CHECK(report.uniform_bound == doctest::Approx(2.625).epsilon(1e-14));

  const PerturbationReport clean = perturbation_bound(10.0, 5.0, 0.0);
  CHECK(clean.applicable);
  CHECK(clean.uniform_bound == 0.0);

  const PerturbationReport saturated = perturbation_bound(10.0, 5.0, 5.0);
  CHECK_FALSE(saturated.applicable);
  const PerturbationReport beyond = perturbation_bound(10.0, 5.0, 7.5);
  CHECK_FALSE(beyond.applicable);

  CHECK_THROWS_AS(perturbation_bound(1.0, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("support_bound") {
  CHECK(support_bound(0.0, 1.0, 2.0, 10) == 0.0);
  const double base = support_bound(1.0, 1.0, 2.0, 10);
  CHECK(support_bound(1.0, 2.0, 2.0, 10) == doctest::Approx(0.5 * base).epsilon(1e-14));
  CHECK(base == doctest::Approx(2.0 / (2.0 * std::sqrt(11.0))).epsilon(1e-14));
  CHECK_THROWS_AS(support_bound(1.0, 0.0, 2.0, 10), std::domain_error);
  CHECK_THROWS_AS(support_bound(1.0, 1.0, 0.0, 10), std::domain_error);
}

TEST_CASE("localizer_bound") {
  CHECK(localizer_bound(2.0, 16, 0.0) == 0.0);
  const double unit = localizer_bound(2.0, 16, 1.0);
  CHECK(localizer_bound(2.0, 16, 3.0) == doctest::Approx(3.0 * unit).epsilon(1e-14));
  CHECK(unit == doctest::Approx(8.0 * eta_zeta(16).first).epsilon(1e-14));
  CHECK_THROWS_AS(localizer_bound(-1.0, 16, 1.0), std::invalid_argument);
}

TEST_CASE("localizer bound dominates measured displacements at small noise") {
  const int data_length = 64;
  const int pencil = 32;
  const double gap = 4.0 / data_length;
  CounterRng rng(61);
  int violations = 0;
  for (int t = 0; t < 50; ++t) {
    const double base = rng.uniform();
    const std::vector<double> freqs{torus_reduce(base), torus_reduce(base + gap),
                                    torus_reduce(base + 2 * gap)};
    std::vector<cd> amps(3);
    for (auto& x : amps) x = std::polar(1.0, kTwoPi * rng.uniform());
    const FrequencyModel model(freqs, amps);
    const Signal clean = synthesize(model, data_length);
    const Signal noisy = add_noise(clean, NoiseSpec{1e-3, rng.next_u64()});
    Signal noise_only;
    noise_only.samples = noisy.samples - clean.samples;
    const double noise_norm = spectral_norm(build_hankel(noise_only, pencil).entries);

    const SubspaceSplit clean_split = subspace_split(build_hankel(clean, pencil), 3);
    const PerturbationReport report = perturbation_bound(
        clean_split.singular_values[0], clean_split.singular_values[2], noise_norm);
    REQUIRE(report.applicable);
    const double bound = localizer_bound(report.alpha, pencil, noise_norm);

    const EstimateResult estimate = music_estimate(noisy, 3, pencil);
    REQUIRE(estimate.frequencies.size() == 3);
    for (double w : model.frequencies()) {
      double displacement = 0.5;
      for (double est : estimate.frequencies) {
        displacement = std::min(displacement, torus_distance(est, w));
      }
      // Q''(w)/2 stands in for the curvature minimum over the bracket
      const double curvature = q_second_derivative(clean_split, w) / 2.0;
      if (displacement * curvature > bound) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("cluster_upper_bound") {
  // R = 1 reduces to the plain Ingham upper bound
  const ClusterReport single = cluster_upper_bound(1, 0.02, 100);
  const InghamReport ingham = ingham_bounds(100, 0.02);
  CHECK(single.upper_per_l == doctest::Approx(ingham.upper_per_l).epsilon(1e-14));

  // R = 2 with R*rho = 0.02 doubles the B factor
  const ClusterReport pair = cluster_upper_bound(2, 0.01, 100);
  CHECK(pair.b_value == doctest::Approx(1.9555985787050432).epsilon(1e-10));
  CHECK(pair.upper_per_l == doctest::Approx(3.9111971574100864).epsilon(1e-10));
  CHECK(pair.upper_per_l == doctest::Approx(pair.b_value * 2).epsilon(1e-14));
  CHECK(pair.rayleigh_index == 2);

  // asymptotic value 17 sqrt(2) / (4 pi) at R*rho = 2/L
  const int pencil = 10000;
  const ClusterReport asym = cluster_upper_bound(2, 1.0 / pencil, pencil);
  const double limit = 17.0 * std::sqrt(2.0) / (4.0 * std::numbers::pi);
  CHECK(asym.b_value == doctest::Approx(limit).epsilon(0.02));

  CHECK_THROWS_AS(cluster_upper_bound(0, 0.1, 100), std::invalid_argument);
  CHECK_THROWS_AS(cluster_upper_bound(1, 0.0, 100), std::invalid_argument);
}

TEST_CASE("cluster bound dominates the oracle on clustered sets") {
  CounterRng rng(31);
  const int pencil = 64;
  for (int trial = 0; trial < 10; ++trial) {
    // R equally spaced clusters of spacing rho, satisfying the weakened gap
    const int cluster = 2 + static_cast<int>(rng.uniform() * 2);
    const double rho = 0.35 / (cluster * 4);
    std::vector<double> freqs;
    const double base = rng.uniform();
    for (int c = 0; c < 4; ++c) {
      for (int j = 0; j < cluster; ++j) {
        freqs.push_back(torus_reduce(base + c * 0.25 + j * rho));
      }
    }
    const ClusterReport report = cluster_upper_bound(cluster, rho, pencil);
    const SingularExtremes oracle = vandermonde_extremes(freqs, pencil);
    CHECK(oracle.smax_sq_per_l <= report.upper_per_l + 1e-9);
  }
}

TEST_CASE("rayleigh_index") {
  const int pencil = 64;
  // all gaps > 2/L
  const std::vector<double> spread{0.1, 0.3, 0.6, 0.9};
  const RayleighIndex easy = rayleigh_index(spread, pencil);
  CHECK(easy.value == 1);
  CHECK_FALSE(easy.boundary);

  // one pair at gap 1/L, the rest >= 4/L apart
  const std::vector<double> pair{0.1, 0.1 + 1.0 / pencil, 0.4, 0.7};
  const RayleighIndex two = rayleigh_index(pair, pencil);
  CHECK(two.value == 2);
  CHECK_FALSE(two.boundary);

  // s points equally spaced at exactly 2/L: strict inequality never holds
  const int s = pencil / 2;
  std::vector<double> saturated(s);
  for (int j = 0; j < s; ++j) saturated[j] = j * 2.0 / pencil;
  const RayleighIndex fallback = rayleigh_index(saturated, pencil);
  CHECK(fallback.value == s);
  CHECK(fallback.boundary);
}

TEST_CASE("superres_tolerance_model") {
  // paper-reported exponent for two-point clusters
  const double exponent = 3.6691;
  CHECK(superres_tolerance_model(1.0, exponent, 0.37) == doctest::Approx(0.37));
  const double a = superres_tolerance_model(0.5, exponent, 2.0);
  const double b = superres_tolerance_model(1.7, exponent, 2.0);
  const double slope = (std::log(b) - std::log(a)) / (std::log(1.7) - std::log(0.5));
  CHECK(slope == doctest::Approx(exponent).epsilon(1e-12));
  CHECK_THROWS_AS(superres_tolerance_model(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("ingham kernel properties (quick version)") {
  const int pencil = 64;
  CounterRng rng(37);

  // periodicity is exact by construction (dyadic points keep omega + n
  // representable, so the folded argument is bit-identical)
  for (int trial = 0; trial < 20; ++trial) {
    const double omega = std::floor(rng.uniform() * 0x1p40) * 0x1p-40;
    const cd at = ingham_kernel(pencil, omega);
    CHECK(ingham_kernel(pencil, omega + 1.0) == at);
    CHECK(ingham_kernel(pencil, omega - 2.0) == at);
  }

  // G(0) within L(2/pi -+ 1/L)
  const double g0 = ingham_kernel(pencil, 0.0).real();
  CHECK(g0 >= pencil * (2.0 / std::numbers::pi - 1.0 / pencil));
  CHECK(g0 <= pencil * (2.0 / std::numbers::pi + 1.0 / pencil));
  CHECK(std::abs(ingham_kernel(pencil, 0.0).imag()) < 1e-12);

  // |G(-omega)| = |G(omega)|
  for (int trial = 0; trial < 20; ++trial) {
    const double omega = rng.uniform();
    CHECK(std::abs(ingham_kernel(pencil, -omega)) ==
          doctest::Approx(std::abs(ingham_kernel(pencil, omega))).epsilon(1e-11));
  }

  // decay bound away from the singularity band |2 L omega - 1| < 1e-3
  for (int trial = 0; trial < 200; ++trial) {
    const double omega = 0.5 * rng.uniform();
    if (std::abs(2.0 * pencil * omega - 1.0) < 1e-3) continue;
    const double bound = (2.0 / std::numbers::pi) * pencil /
                             std::abs(1.0 - 4.0 * pencil * pencil * omega * omega) +
                         8.0 / (std::numbers::pi * pencil);
    CHECK(std::abs(ingham_kernel(pencil, omega)) <= bound);
  }
}

TEST_CASE("minimum singular value shrinks with the cluster gap (slope recorded)") {
  // clustered-pair oracle probe: slope of log sigma_min vs log q must be
  // nonnegative as q -> 0; the fitted value is informational only
  const int pencil = 32;
  std::vector<double> qs{0.8 / pencil, 0.4 / pencil, 0.2 / pencil, 0.1 / pencil};
  std::vector<double> smin;
  for (double q : qs) {
    const std::vector<double> freqs{0.2, 0.2 + q};
    smin.push_back(std::sqrt(vandermonde_extremes(freqs, pencil).smin_sq_per_l * pencil));
  }
  double slope_sum = 0.0;
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
    const double slope =
        (std::log(smin[i]) - std::log(smin[i + 1])) / (std::log(qs[i]) - std::log(qs[i + 1]));
    CHECK(slope >= 0.0);
    slope_sum += slope;
  }
  MESSAGE("mean log-log slope of sigma_min vs q (pair, L=32): " << slope_sum / 3.0);
}
