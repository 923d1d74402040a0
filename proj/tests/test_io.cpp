#include <doctest.h>

#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssmusic/io.hpp"
#include "ssmusic/rng.hpp"

using namespace ssmusic;
using cd = std::complex<double>;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ssmusic_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("model JSON round trip") {
  const ModelFile original{
      FrequencyModel({0.12345678901234567, 0.5, 0.98765}, {cd(1, -2), cd(0.25, 0), cd(-3, 4)}),
      100,
      NoiseSpec{0.05, 987654321}};
  const fs::path path = temp_file("model.json");
  write_model_json(path, original);
  const ModelFile reread = read_model_json(path);

  CHECK(reread.data_length == 100);
  CHECK(reread.noise.sigma == original.noise.sigma);
  CHECK(reread.noise.seed == original.noise.seed);
  REQUIRE(reread.model.size() == 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(reread.model.frequencies()[j] == original.model.frequencies()[j]);
    CHECK(reread.model.amplitudes()[j] == original.model.amplitudes()[j]);
  }
}

TEST_CASE("signal CSV round trip is exact") {
  CounterRng rng(3);
  Signal signal;
  signal.samples.resize(33);
  for (Eigen::Index k = 0; k < 33; ++k) signal.samples[k] = cd(rng.normal(), rng.normal());

  const fs::path path = temp_file("signal.csv");
  write_signal_csv(path, signal, "{\"who\":\"test\"}");
  const Signal reread = read_signal_csv(path);
  REQUIRE(reread.samples.size() == 33);
  CHECK(reread.data_length() == 32);
  for (Eigen::Index k = 0; k < 33; ++k) CHECK(reread.samples[k] == signal.samples[k]);
}

TEST_CASE("matrix dump round trip with shape header") {
  CounterRng rng(5);
  Eigen::MatrixXcd m(3, 4);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = cd(rng.normal(), rng.normal());
  }
  const fs::path path = temp_file("matrix.csv");
  write_matrix_csv(path, m);

  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "# shape 3 4");

  const Eigen::MatrixXcd reread = read_matrix_csv(path);
  REQUIRE(reread.rows() == 3);
  REQUIRE(reread.cols() == 4);
  CHECK((reread - m).norm() == 0.0);
}

TEST_CASE("profile CSV and estimate JSON structure") {
  CorrelationProfile profile;
  profile.grid = {0.0, 0.25, 0.5, 0.75};
  profile.r_values = {0.5, 0.0, 1.0, 0.25};
  profile.j_values = {2.0, kImagingFunctionCap, 1.0, 4.0};
  const fs::path csv_path = temp_file("profile.csv");
  write_profile_csv(csv_path, profile);
  std::ifstream in(csv_path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "omega,r,j");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);

  EstimateResult estimate;
  estimate.frequencies = {0.25};
  estimate.minima_values = {0.0};
  estimate.refinement_iterations = {31};
  AmplitudeSolution amplitudes;
  amplitudes.amplitudes = {cd(3, 4)};
  amplitudes.residual_norm = 1e-12;
  const fs::path json_path = temp_file("estimate.json");
  write_estimate_json(json_path, estimate, amplitudes, "{\"s\":1}");

  std::stringstream ss;
  ss << std::ifstream(json_path).rdbuf();
  const std::string text = ss.str();
  CHECK(text.find("\"frequencies\"") != std::string::npos);
  CHECK(text.find("\"residual\"") != std::string::npos);
  CHECK(text.find("\"config\"") != std::string::npos);
}

TEST_CASE("config_hash is stable and input-sensitive") {
  CHECK(config_hash("abc") == config_hash("abc"));
  CHECK(config_hash("abc") != config_hash("abd"));
  CHECK(config_hash("").size() == 16);
}

TEST_CASE("unreadable and unwritable paths throw") {
  CHECK_THROWS_AS(read_model_json("/nonexistent/model.json"), std::runtime_error);
  CHECK_THROWS_AS(read_signal_csv("/nonexistent/y.csv"), std::runtime_error);
  Signal tiny;
  tiny.samples = Eigen::VectorXcd::Ones(2);
  CHECK_THROWS_AS(write_signal_csv("/nonexistent-root/dir/y.csv", tiny),
                  std::runtime_error);
}
