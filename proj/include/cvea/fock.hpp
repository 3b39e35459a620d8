#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cvea/covariance.hpp"

namespace cvea {

using Complex = std::complex<double>;

/// Number of Fock levels kept per mode, levels 0..d-1.
class FockCutoff {
 public:
  /// Throws DomainError for d < 2.
  explicit FockCutoff(int d);

  int d() const { return d_; }
  int dim() const { return d_ * d_; }
  /// Top levels excluded from completeness and support checks, ceil(d / 4).
  int guard_band() const { return (d_ + 3) / 4; }
  /// Levels 0..guarded_levels()-1 carry accuracy guarantees.
  int guarded_levels() const { return d_ - guard_band(); }

  friend bool operator==(const FockCutoff&, const FockCutoff&) = default;

 private:
  int d_;
};

enum class Mode { first, second };

/// Two-mode pure state; amplitude of |n1, n2> at index n1 * d + n2.
class FockState {
 public:
  FockState(FockCutoff cutoff, Eigen::VectorXcd amplitudes);

  FockCutoff cutoff() const { return cutoff_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(int n1, int n2) const { return amplitudes_(n1 * cutoff_.d() + n2); }

 private:
  FockCutoff cutoff_;
  Eigen::VectorXcd amplitudes_;
};

/// Two-mode density operator on the truncated space, same index layout.
class FockDensity {
 public:
  FockDensity(FockCutoff cutoff, Eigen::MatrixXcd matrix);

  static FockDensity from_pure(const FockState& psi);

  FockCutoff cutoff() const { return cutoff_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  FockCutoff cutoff_;
  Eigen::MatrixXcd matrix_;
};

/// Truncated coherent-state amplitudes <n|gamma>, n < d. Not renormalized.
/// Throws CutoffTooSmall when the discarded mass exceeds max_tail.
Eigen::VectorXcd coherent_state(Complex gamma, FockCutoff cutoff, double max_tail = 1e-8);

/// Probability mass of |gamma> on levels >= d.
double coherent_tail_mass(double abs_gamma, int d);

/// [2 (1 - exp(-|gamma|^2))]^{-1/2} (|gamma>|0> - |0>|gamma>).
FockState psi_gamma_state(Complex gamma, FockCutoff cutoff);

/// Mean photon number |gamma|^2 / (1 - exp(-|gamma|^2)) of psi_gamma_state.
double psi_gamma_energy(double abs_gamma);

/// (|n>|0> + sign |0>|n>) / sqrt(2), sign = +1 or -1.
FockState psi_n_state(int n, int sign, FockCutoff cutoff);

/// sqrt(1 - tanh^2 r) sum_n tanh^n r |n>|n>.
FockState tmsv_state(double r, FockCutoff cutoff);

FockState product_state(const Eigen::VectorXcd& first, const Eigen::VectorXcd& second);

/// Exchanges the two tensor factors.
Eigen::MatrixXcd swap_modes(const Eigen::MatrixXcd& rho, int d);

/// Transposes the bra/ket indices of one mode.
Eigen::MatrixXcd partial_transpose(const FockDensity& rho, Mode mode);

/// Sum of |negative eigenvalues| of the partial transpose; eigenvalues in
/// [-floor, 0) count as zero.
double negativity(const FockDensity& rho, Mode mode = Mode::second, double floor = 1e-9);

/// Mean photon number <n1 + n2>.
double mean_photon_number(const FockDensity& rho);

struct Moments {
  Eigen::Vector4d mean;
  CovarianceMatrix covariance;
};

/// First moments and symmetrized second moments of (q1, p1, q2, p2) with
/// q = (b + b^dag) / sqrt 2 and p = (b - b^dag) / (i sqrt 2). Moments are
/// normalized by tr(rho).
Moments moments(const FockDensity& rho);

}  // namespace cvea
