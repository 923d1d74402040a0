#include "ssmusic/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace ssmusic {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return in;
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) values.push_back(std::stod(field));
  return values;
}

}  // namespace

ModelFile read_model_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  json doc = json::parse(in);
  std::vector<double> freqs = doc.at("frequencies").get<std::vector<double>>();
  std::vector<std::complex<double>> amps;
  for (const auto& pair : doc.at("amplitudes")) {
    amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  NoiseSpec noise;
  if (doc.contains("noise")) {
    noise.sigma = doc["noise"].value("sigma", 0.0);
    noise.seed = doc["noise"].value("seed", std::uint64_t{0});
  }
  return ModelFile{FrequencyModel(std::move(freqs), std::move(amps)), doc.at("M").get<int>(),
                   noise};
}

void write_model_json(const std::filesystem::path& path, const ModelFile& file) {
  json amps = json::array();
  for (const auto& x : file.model.amplitudes()) amps.push_back({x.real(), x.imag()});
  json doc{{"M", file.data_length},
           {"frequencies", file.model.frequencies()},
           {"amplitudes", amps},
           {"noise", {{"sigma", file.noise.sigma}, {"seed", file.noise.seed}}}};
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

void write_signal_csv(const std::filesystem::path& path, const Signal& signal,
                      const std::string& config_json) {
  auto out = open_out(path);
  if (!config_json.empty()) out << "# config " << config_json << "\n";
  out << "k,re,im\n";
  for (Eigen::Index k = 0; k < signal.samples.size(); ++k) {
    out << k << "," << signal.samples[k].real() << "," << signal.samples[k].imag() << "\n";
  }
}

Signal read_signal_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::vector<std::complex<double>> samples;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("k,", 0) == 0) continue;
    const auto row = parse_row(line);
    if (row.size() != 3) throw std::runtime_error("signal CSV: expected k,re,im in " + path.string());
    samples.emplace_back(row[1], row[2]);
  }
  if (samples.empty()) throw std::runtime_error("signal CSV: no samples in " + path.string());
  Signal signal;
  signal.samples.resize(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    signal.samples[static_cast<Eigen::Index>(k)] = samples[k];
  }
  return signal;
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXcd& matrix,
                      const std::string& config_json) {
  auto out = open_out(path);
  if (!config_json.empty()) out << "# config " << config_json << "\n";
  out << "# shape " << matrix.rows() << " " << matrix.cols() << "\n";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out << ",";
      out << matrix(i, j).real() << "," << matrix(i, j).imag();
    }
    out << "\n";
  }
}

Eigen::MatrixXcd read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  Eigen::Index rows = -1, cols = -1;
  std::vector<std::vector<double>> data;
  while (std::getline(in, line)) {
    if (line.rfind("# shape", 0) == 0) {
      std::stringstream ss(line.substr(7));
      ss >> rows >> cols;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    data.push_back(parse_row(line));
  }
  if (rows < 0 || cols < 0) throw std::runtime_error("matrix CSV: missing shape header");
  if (static_cast<Eigen::Index>(data.size()) != rows) {
    throw std::runtime_error("matrix CSV: row count mismatch");
  }
  Eigen::MatrixXcd matrix(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(data[i].size()) != 2 * cols) {
      throw std::runtime_error("matrix CSV: column count mismatch");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      matrix(i, j) = {data[i][2 * j], data[i][2 * j + 1]};
    }
  }
  return matrix;
}

void write_profile_csv(const std::filesystem::path& path, const CorrelationProfile& profile,
                       const std::string& config_json) {
  auto out = open_out(path);
  if (!config_json.empty()) out << "# config " << config_json << "\n";
  out << "omega,r,j\n";
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    out << profile.grid[i] << "," << profile.r_values[i] << "," << profile.j_values[i] << "\n";
  }
}

void write_estimate_json(const std::filesystem::path& path, const EstimateResult& estimate,
                         const AmplitudeSolution& amplitudes, const std::string& config_json) {
  json amps = json::array();
  for (const auto& x : amplitudes.amplitudes) amps.push_back({x.real(), x.imag()});
  json doc{{"frequencies", estimate.frequencies},
           {"minima_values", estimate.minima_values},
           {"refinement_iterations", estimate.refinement_iterations},
           {"insufficient", estimate.insufficient},
           {"amplitudes", amps},
           {"residual", amplitudes.residual_norm},
           {"minimum_norm_fallback", amplitudes.minimum_norm_fallback}};
  if (!config_json.empty()) doc["config"] = json::parse(config_json);
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

std::string config_hash(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace ssmusic
