#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cvea/channel.hpp"

namespace cvea {

/// Real symmetric 2N x 2N second-moment matrix, quadrature ordering
/// (x1, y1, ..., xN, yN). The vacuum is identity / 2.
class CovarianceMatrix {
 public:
  /// Throws DimensionMismatch for non-square or odd-sized input and
  /// DomainError when the matrix is not symmetric.
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  static CovarianceMatrix vacuum(int n_modes);
  static CovarianceMatrix thermal(int n_modes, double nu);

  int n_modes() const { return static_cast<int>(entries_.rows() / 2); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

 private:
  Eigen::MatrixXd entries_;
};

/// Block-diagonal symplectic form, one [[0, -1], [1, 0]] block per mode.
Eigen::MatrixXd symplectic_form(int n_modes);

/// K^T V K + M with K = (+)_i sqrt(kappa_i) I2 and M = (+)_i mu_i I2. No
/// validity check is made on (kappa_i, mu_i): this is the formal map, also
/// used for boundary searches that run past the physical region.
CovarianceMatrix scale_and_add_noise(const CovarianceMatrix& v,
                                     std::span<const double> kappas,
                                     std::span<const double> mus);

/// Action of Phi(kappa_1, mu_1) (x) ... (x) Phi(kappa_N, mu_N) on V.
CovarianceMatrix apply_channel(const CovarianceMatrix& v, const ChannelTuple& t);

CovarianceMatrix tmsv_covariance(double r);
double tmsv_energy(double r);
/// Inverse of tmsv_energy.
double tmsv_squeezing_for_energy(double energy);

/// Symplectic eigenvalues in ascending order, one per mode.
///
/// For positive-definite V the spectrum is read off the Hermitian matrix
/// L^T (i Delta) L, V = L L^T, which carries the same eigenvalues +-nu as
/// i Delta V. Other symmetric inputs fall back to the general eigen-solver
/// on Delta V.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v);

/// Reference route through the non-symmetric spectrum of Delta V.
std::vector<double> symplectic_eigenvalues_general(const CovarianceMatrix& v);

/// Physical iff every symplectic eigenvalue is >= 1/2 (up to tol).
bool is_physical(const CovarianceMatrix& v, double tol = 1e-9);

/// Flips the sign of the y-quadrature of `mode` (0-based).
CovarianceMatrix partial_transpose(const CovarianceMatrix& v, int mode);

/// Smallest symplectic eigenvalue of the partially transposed matrix.
double min_pt_symplectic_eigenvalue(const CovarianceMatrix& v);

/// Simon's criterion for two-mode states; boundary points count as separable.
bool simon_separable(const CovarianceMatrix& v, double tol = 1e-9);

}  // namespace cvea
