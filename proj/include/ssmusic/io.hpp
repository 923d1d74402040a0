#ifndef SSMUSIC_IO_HPP
#define SSMUSIC_IO_HPP

#include <filesystem>
#include <string>

#include <Eigen/Core>

#include "ssmusic/music.hpp"
#include "ssmusic/signal_model.hpp"

namespace ssmusic {

// Model file schema:
// { "M": int, "frequencies": [real], "amplitudes": [[re,im]],
//   "noise": {"sigma": real, "seed": int} }  (noise optional)
struct ModelFile {
  FrequencyModel model;
  int data_length = 0;  // M
  NoiseSpec noise;
};

ModelFile read_model_json(const std::filesystem::path& path);
void write_model_json(const std::filesystem::path& path, const ModelFile& file);

// Signal CSV: header "k,re,im", one row per sample. A leading "# ..." comment
// line is permitted and skipped on read.
void write_signal_csv(const std::filesystem::path& path, const Signal& signal,
                      const std::string& config_json = "");
Signal read_signal_csv(const std::filesystem::path& path);

// Matrix dump: "# shape rows cols" header, then re,im pairs row-major.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXcd& matrix,
                      const std::string& config_json = "");
Eigen::MatrixXcd read_matrix_csv(const std::filesystem::path& path);

// Correlation profile CSV: "omega,r,j".
void write_profile_csv(const std::filesystem::path& path, const CorrelationProfile& profile,
                       const std::string& config_json = "");

// Estimate JSON: {frequencies, minima_values, insufficient, amplitudes
// ([[re,im]]), residual, config}.
void write_estimate_json(const std::filesystem::path& path, const EstimateResult& estimate,
                         const AmplitudeSolution& amplitudes, const std::string& config_json);

// FNV-1a hash of a string, hex-encoded; names run directories after the
// resolved configuration.
std::string config_hash(const std::string& text);

}  // namespace ssmusic

#endif  // SSMUSIC_IO_HPP
