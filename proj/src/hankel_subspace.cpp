#include "ssmusic/hankel_subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ssmusic {

HankelMatrix build_hankel(const Signal& signal, int pencil) {
  const int data_length = signal.data_length();
  if (pencil < 1 || pencil >= data_length) {
    throw std::invalid_argument("build_hankel: need 1 <= L < M");
  }
  HankelMatrix h;
  h.pencil = pencil;
  h.data_length = data_length;
  h.entries.resize(pencil + 1, data_length - pencil + 1);
  for (int i = 0; i <= pencil; ++i) {
    for (int j = 0; j <= data_length - pencil; ++j) {
      h.entries(i, j) = signal.samples[i + j];
    }
  }
  return h;
}

VandermondeMatrix build_vandermonde(std::span<const double> frequencies, int row_begin,
                                    int row_end) {
  if (row_begin > row_end) {
    throw std::invalid_argument("build_vandermonde: need N1 <= N2");
  }
  VandermondeMatrix v;
  v.row_begin = row_begin;
  v.row_end = row_end;
  v.frequencies.assign(frequencies.begin(), frequencies.end());
  v.entries.resize(row_end - row_begin + 1, static_cast<Eigen::Index>(frequencies.size()));
  for (int k = row_begin; k <= row_end; ++k) {
    for (std::size_t j = 0; j < frequencies.size(); ++j) {
      v.entries(k - row_begin, static_cast<Eigen::Index>(j)) =
          std::polar(1.0, -kTwoPi * k * frequencies[j]);
    }
  }
  return v;
}

double vandermonde_identity_residual(const FrequencyModel& model, int data_length, int pencil) {
  const Signal y = synthesize(model, data_length);
  const HankelMatrix h = build_hankel(y, pencil);
  const VandermondeMatrix head = build_vandermonde(model.frequencies(), 0, pencil);
  const VandermondeMatrix tail = build_vandermonde(model.frequencies(), 0, data_length - pencil);
  Eigen::VectorXcd x(model.size());
  for (int j = 0; j < model.size(); ++j) x[j] = model.amplitudes()[j];
  const Eigen::MatrixXcd product = head.entries * x.asDiagonal() * tail.entries.transpose();
  const double scale = h.entries.norm();
  const double residual = (h.entries - product).norm();
  return scale > 0.0 ? residual / scale : residual;
}

SubspaceSplit subspace_split(const HankelMatrix& hankel, int model_order) {
  const Eigen::Index rows = hankel.entries.rows();
  const Eigen::Index cols = hankel.entries.cols();
  const Eigen::Index rank_cap = std::min(rows, cols);
  if (model_order < 1 || model_order > rank_cap) {
    throw std::invalid_argument("subspace_split: s out of range");
  }

  SubspaceSplit split;
  split.model_order = model_order;
  split.pencil = hankel.pencil;
  split.data_length = hankel.data_length;

  if (hankel.entries.isZero(0.0)) {
    split.singular_values = Eigen::VectorXd::Zero(rank_cap);
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(rows, rows);
    split.signal_basis = eye.leftCols(model_order);
    split.noise_basis = eye.rightCols(rows - model_order);
    return split;
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(hankel.entries, Eigen::ComputeFullU);
  split.singular_values = svd.singularValues();
  split.signal_basis = svd.matrixU().leftCols(model_order);
  split.noise_basis = svd.matrixU().rightCols(rows - model_order);
  return split;
}

int estimate_order(std::span<const double> singular_values) {
  if (singular_values.size() < 2) {
    throw std::invalid_argument("estimate_order: need at least 2 singular values");
  }
  constexpr double kFloor = 1e-14;
  bool all_below = true;
  for (double sv : singular_values) {
    if (sv >= kFloor) all_below = false;
  }
  if (all_below) return 0;

  int best = 1;
  double best_ratio = -1.0;
  for (std::size_t j = 0; j + 1 < singular_values.size(); ++j) {
    const double hi = singular_values[j];
    const double lo = singular_values[j + 1];
    double ratio;
    if (lo > 0.0) {
      ratio = hi / lo;
    } else {
      ratio = hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = static_cast<int>(j) + 1;
    }
  }
  return best;
}

bool weyl_gap_check(std::span<const double> clean_singular_values,
                    std::span<const double> noisy_singular_values, double noise_norm,
                    double tol) {
  const std::size_t n = std::max(clean_singular_values.size(), noisy_singular_values.size());
  for (std::size_t j = 0; j < n; ++j) {
    const double clean = j < clean_singular_values.size() ? clean_singular_values[j] : 0.0;
    const double noisy = j < noisy_singular_values.size() ? noisy_singular_values[j] : 0.0;
    if (std::fabs(noisy - clean) > noise_norm + tol) return false;
  }
  return true;
}

double spectral_norm(const Eigen::MatrixXcd& matrix) {
  if (matrix.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix);
  return svd.singularValues()[0];
}

}  // namespace ssmusic
