#ifndef SSMUSIC_HANKEL_SUBSPACE_HPP
#define SSMUSIC_HANKEL_SUBSPACE_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "ssmusic/signal_model.hpp"

namespace ssmusic {

// (L+1) x (M-L+1) data matrix with entry (i,j) = y_{i+j}.
struct HankelMatrix {
  Eigen::MatrixXcd entries;
  int pencil = 0;       // L
  int data_length = 0;  // M
};

// Phi^{N1->N2}: entry (k - N1, j) = exp(-2*pi*i*k*omega_j), k = N1..N2.
struct VandermondeMatrix {
  Eigen::MatrixXcd entries;
  int row_begin = 0;
  int row_end = 0;
  std::vector<double> frequencies;
};

// SVD-derived orthogonal split of C^{L+1}: the signal space (first s left
// singular vectors) and its complement, the noise space.
struct SubspaceSplit {
  Eigen::MatrixXcd signal_basis;    // (L+1) x s
  Eigen::MatrixXcd noise_basis;     // (L+1) x (L+1-s)
  Eigen::VectorXd singular_values;  // min(L+1, M-L+1) values, nonincreasing
  int model_order = 0;              // s
  int pencil = 0;                   // L
  int data_length = 0;              // M
};

// Requires 1 <= L < M.
HankelMatrix build_hankel(const Signal& signal, int pencil);

VandermondeMatrix build_vandermonde(std::span<const double> frequencies, int row_begin,
                                    int row_end);

// Relative Frobenius residual of Hankel(synthesize(model)) minus
// Phi^L diag(x) (Phi^{M-L})^T. Noiseless data makes this ~1e-15.
double vandermonde_identity_residual(const FrequencyModel& model, int data_length, int pencil);

// Full SVD split at model order s. A zero matrix yields all-zero singular
// values and identity-column bases.
SubspaceSplit subspace_split(const HankelMatrix& hankel, int model_order);

// Index of the largest multiplicative gap sigma_j / sigma_{j+1} (1-based
// count of retained values; smallest index wins ties). Returns 0 when every
// value is below 1e-14.
int estimate_order(std::span<const double> singular_values);

// Checks |sigma^eps_j - sigma_j| <= noise_norm + tol for all j, padding the
// shorter list with zeros.
bool weyl_gap_check(std::span<const double> clean_singular_values,
                    std::span<const double> noisy_singular_values, double noise_norm,
                    double tol = 1e-9);

// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& matrix);

}  // namespace ssmusic

#endif  // SSMUSIC_HANKEL_SUBSPACE_HPP
