#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ssmusic/music.hpp"
#include "ssmusic/rng.hpp"
#include "ssmusic/signal_model.hpp"

using namespace ssmusic;
using cd = std::complex<double>;

namespace {

// Two-sample DC model: H is the 2x2 all-ones matrix and
// R(omega) = |1 - e^{-2 pi i omega}| / 2 in closed form.
SubspaceSplit dc_split() {
  const Signal y = synthesize(FrequencyModel({0.0}, {cd(1)}), 2);
  return subspace_split(build_hankel(y, 1), 1);
}

double dc_correlation(double omega) {
  return std::abs(1.0 - std::polar(1.0, -kTwoPi * omega)) / 2.0;
}

}  // namespace

TEST_CASE("correlation_at closed form for the 2x2 DC model") {
  const SubspaceSplit split = dc_split();
  CHECK(correlation_at(split, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CounterRng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const double omega = rng.uniform();
    CHECK(correlation_at(split, omega) ==
          doctest::Approx(dc_correlation(omega)).epsilon(1e-12));
  }
}

TEST_CASE("correlation vanishes at true frequencies of a noiseless split") {
  const FrequencyModel model({0.13, 0.47, 0.81}, {cd(1), cd(0, 2), cd(-1, 1)});
  const Signal y = synthesize(model, 24);
  const SubspaceSplit split = subspace_split(build_hankel(y, 12), 3);
  for (double w : model.frequencies()) {
    CHECK(correlation_at(split, w) <= 1e-9);
  }
}

TEST_CASE("correlation matches an explicit projector computation") {
  // independent oracle: P2 = I - Phi (Phi^H Phi)^{-1} Phi^H on the noiseless
  // signal space
  const FrequencyModel model({0.2, 0.55}, {cd(1), cd(2, -1)});
  const int pencil = 9;
  const Signal y = synthesize(model, 20);
  const SubspaceSplit split = subspace_split(build_hankel(y, pencil), 2);

  const VandermondeMatrix phi_cols = build_vandermonde(model.frequencies(), 0, pencil);
  const Eigen::MatrixXcd gram = phi_cols.entries.adjoint() * phi_cols.entries;
  const Eigen::MatrixXcd projector =
      Eigen::MatrixXcd::Identity(pencil + 1, pencil + 1) -
      phi_cols.entries * gram.inverse() * phi_cols.entries.adjoint();

  CounterRng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const double omega = rng.uniform();
    const Eigen::VectorXcd probe = imaging_vector(omega, pencil);
    const double expected = (projector * probe).norm() / std::sqrt(pencil + 1.0);
    CHECK(correlation_at(split, omega) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("scan_profile shape and range") {
  const Signal y = synthesize(FrequencyModel({0.37}, {cd(1)}), 40);
  const SubspaceSplit split = subspace_split(build_hankel(y, 20), 1);
  const CorrelationProfile profile = scan_profile(split, 0.1);

  CHECK(profile.grid.size() == static_cast<std::size_t>(std::ceil(40 / 0.1)));
  double best_r = 2.0;
  double best_omega = -1.0;
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    CHECK(profile.r_values[i] >= 0.0);
    CHECK(profile.r_values[i] <= 1.0);
    if (profile.r_values[i] > 0.0) {
      CHECK(profile.j_values[i] * profile.r_values[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
    if (profile.r_values[i] < best_r) {
      best_r = profile.r_values[i];
      best_omega = profile.grid[i];
    }
  }
  // global minimum within one grid cell of the tone
  CHECK(torus_distance(best_omega, 0.37) <= 1.0 / profile.grid.size() + 1e-15);

  CHECK_THROWS_AS(scan_profile(split, 0.0), std::invalid_argument);
}

TEST_CASE("extract_minima recovers 10 equally spaced tones noiselessly") {
  const int data_length = 100;
  std::vector<double> freqs;
  std::vector<cd> amps;
  for (int j = 0; j < 10; ++j) {
    freqs.push_back(0.05 + j * 0.1);
    amps.push_back(cd(1));
  }
  const FrequencyModel model(freqs, amps);
  const Signal y = synthesize(model, data_length);
  const EstimateResult estimate = music_estimate(y, 10, 50);
  REQUIRE(estimate.frequencies.size() == 10);
  CHECK_FALSE(estimate.insufficient);
  CHECK(hausdorff(estimate.frequencies, model.frequencies()) <=
        1e-6 * rayleigh_length(data_length));
}

TEST_CASE("single noiseless tone is refined to the tolerance") {
  const FrequencyModel model({0.312345678}, {cd(2, 1)});
  const Signal y = synthesize(model, 32);
  const EstimateResult estimate = music_estimate(y, 1, 16, 0.05, 1e-12);
  REQUIRE(estimate.frequencies.size() == 1);
  CHECK(torus_distance(estimate.frequencies[0], 0.312345678) < 1e-9);
  CHECK(estimate.minima_values[0] < 1e-9);
  CHECK(estimate.refinement_iterations[0] > 0);
}

TEST_CASE("flat profile yields the insufficiency flag") {
  Signal zero;
  zero.samples = Eigen::VectorXcd::Zero(21);
  const EstimateResult estimate = music_estimate(zero, 2, 10);
  CHECK(estimate.insufficient);
  CHECK(estimate.frequencies.empty());
}

TEST_CASE("over-parameterized order still pins the true tone") {
  const FrequencyModel model({0.4}, {cd(1)});
  const Signal y = synthesize(model, 30);
  const EstimateResult estimate = music_estimate(y, 3, 15);
  REQUIRE(estimate.frequencies.size() == 3);
  CHECK_FALSE(estimate.insufficient);
  double best = 1.0;
  for (double w : estimate.frequencies) best = std::min(best, torus_distance(w, 0.4));
  CHECK(best < 1e-8);
}

TEST_CASE("amplitude_solve") {
  const FrequencyModel model({0.1, 0.35, 0.77}, {cd(1, -2), cd(0.5, 0), cd(-1, 1)});
  const Signal y = synthesize(model, 20);

  const AmplitudeSolution exact = amplitude_solve(model.frequencies(), y);
  REQUIRE(exact.amplitudes.size() == 3);
  CHECK_FALSE(exact.minimum_norm_fallback);
  CHECK(exact.residual_norm < 1e-10);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(exact.amplitudes[j] - model.amplitudes()[j]) < 1e-10);
  }

  const Signal tone = synthesize(FrequencyModel({0.6}, {cd(3, 4)}), 12);
  const std::vector<double> one{0.6};
  const AmplitudeSolution five = amplitude_solve(one, tone);
  CHECK(std::abs(five.amplitudes[0]) == doctest::Approx(5.0).epsilon(1e-10));

  // duplicated estimates: rank-deficient design takes the minimum-norm branch
  const std::vector<double> duplicated{0.6, 0.6};
  const AmplitudeSolution degenerate = amplitude_solve(duplicated, tone);
  CHECK(degenerate.minimum_norm_fallback);
  CHECK(std::abs(degenerate.amplitudes[0] + degenerate.amplitudes[1] - cd(3, 4)) < 1e-8);

  const std::vector<double> none;
  CHECK_THROWS_AS(amplitude_solve(none, tone), std::invalid_argument);
}

TEST_CASE("q_second_derivative closed form on the DC model") {
  const SubspaceSplit split = dc_split();
  // Q(omega) = (1 - cos 2 pi omega)/2, so Q''(0) = 2 pi^2
  CHECK(q_second_derivative(split, 0.0) ==
        doctest::Approx(2.0 * std::acos(-1.0) * std::acos(-1.0)).epsilon(1e-10));
}

TEST_CASE("q_second_derivative reduces to the projected-derivative form on S") {
  const FrequencyModel model({0.22, 0.61}, {cd(1), cd(1, 1)});
  const int pencil = 10;
  const Signal y = synthesize(model, 22);
  const SubspaceSplit split = subspace_split(build_hankel(y, pencil), 2);
  for (double w : model.frequencies()) {
    const Eigen::VectorXcd dphi = imaging_vector_derivative(w, pencil, 1);
    const double projected = (split.noise_basis.adjoint() * dphi).squaredNorm();
    const double reduced = 2.0 * projected / (pencil + 1);
    CHECK(q_second_derivative(split, w) == doctest::Approx(reduced).epsilon(1e-8));
  }
}

TEST_CASE("q_second_derivative matches a finite-difference oracle") {
  const FrequencyModel model({0.15, 0.48, 0.9}, {cd(1), cd(2), cd(0, -1)});
  const SubspaceSplit split = subspace_split(build_hankel(synthesize(model, 26), 13), 3);
  auto q_of = [&](double w) {
    const double r = correlation_at(split, torus_reduce(w));
    return r * r;
  };
  CounterRng rng(13);
  const double h = 1e-5;
  for (int trial = 0; trial < 30; ++trial) {
    const double omega = rng.uniform();
    const double fd = (q_of(omega + h) - 2.0 * q_of(omega) + q_of(omega - h)) / (h * h);
    const double analytic = q_second_derivative(split, omega);
    CHECK(analytic == doctest::Approx(fd).epsilon(1e-3));
  }
}

TEST_CASE("eta_zeta closed forms") {
  const double two_pi = kTwoPi;
  auto [eta1, zeta1] = eta_zeta(1);
  CHECK(eta1 == doctest::Approx(two_pi / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(zeta1 == doctest::Approx(two_pi * two_pi / std::sqrt(2.0)).epsilon(1e-13));

  auto [eta2, zeta2] = eta_zeta(2);
  CHECK(eta2 == doctest::Approx(8.1115573519472238).epsilon(1e-12));  // 2 pi sqrt(5/3)
  CHECK(zeta2 == doctest::Approx(two_pi * two_pi * std::sqrt(17.0 / 3.0)).epsilon(1e-12));

  // direct power sums at moderate L
  const int pencil = 57;
  double sum2 = 0.0, sum4 = 0.0;
  for (int k = 1; k <= pencil; ++k) {
    sum2 += static_cast<double>(k) * k;
    sum4 += static_cast<double>(k) * k * k * k;
  }
  auto [eta, zeta] = eta_zeta(pencil);
  CHECK(eta == doctest::Approx(two_pi * std::sqrt(sum2 / (pencil + 1))).epsilon(1e-12));
  CHECK(zeta ==
        doctest::Approx(two_pi * two_pi * std::sqrt(sum4 / (pencil + 1))).epsilon(1e-12));

  // eta(L)/L -> 2 pi / sqrt(3)
  auto [eta_big, zeta_big] = eta_zeta(10000);
  CHECK(eta_big / 10000 == doctest::Approx(two_pi / std::sqrt(3.0)).epsilon(1e-3));
  CHECK(zeta_big > 0.0);

  CHECK_THROWS_AS(eta_zeta(0), std::invalid_argument);
}

TEST_CASE("minimal data length: M+1 = 2s suffices for exact recovery") {
  const FrequencyModel model({0.12, 0.43, 0.77}, {cd(1), cd(0, 1), cd(-2, 1)});
  const int data_length = 5;  // M+1 = 6 = 2s
  const int pencil = 3;       // L >= s and M-L+1 >= s
  const Signal y = synthesize(model, data_length);
  const EstimateResult estimate = music_estimate(y, 3, pencil, 0.05, 1e-10);
  REQUIRE(estimate.frequencies.size() == 3);
  CHECK(hausdorff(estimate.frequencies, model.frequencies()) <=
        1e-6 * rayleigh_length(data_length));
}

TEST_CASE("amplitude residual is nonincreasing as the estimate approaches truth") {
  const FrequencyModel model({0.2, 0.5, 0.8}, {cd(1), cd(2, -1), cd(0, 1)});
  const Signal y = synthesize(model, 30);
  double previous = -1.0;
  for (double offset : {8e-3, 4e-3, 2e-3, 1e-3, 0.0}) {
    std::vector<double> shifted;
    for (double w : model.frequencies()) shifted.push_back(torus_reduce(w + offset));
    const double residual = amplitude_solve(shifted, y).residual_norm;
    if (previous >= 0.0) CHECK(residual <= previous + 1e-12);
    previous = residual;
  }
}

TEST_CASE("estimator error shrinks roughly linearly with noise") {
  const int data_length = 64;
  const FrequencyModel model({0.2, 0.2 + 4.0 / 64, 0.2 + 8.0 / 64},
                             {cd(1), cd(0, -1), cd(1, 1)});
  const Signal clean = synthesize(model, data_length);
  std::vector<double> sigmas{1e-2, 1e-4};
  std::vector<double> errors;
  for (double sigma : sigmas) {
    double worst_mean = 0.0;
    for (int t = 0; t < 5; ++t) {
      const Signal noisy =
          add_noise(clean, NoiseSpec{sigma, static_cast<std::uint64_t>(100 + t)});
      const EstimateResult estimate = music_estimate(noisy, 3, 32);
      REQUIRE(estimate.frequencies.size() == 3);
      worst_mean += hausdorff(estimate.frequencies, model.frequencies());
    }
    errors.push_back(worst_mean / 5);
  }
  // two decades of noise should buy roughly two decades of accuracy
  CHECK(errors[1] < errors[0] * 1e-1);
}
