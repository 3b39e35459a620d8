#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cvea/channel.hpp"
#include "cvea/fock.hpp"

namespace cvea {

/// Witness W_lambda = int d2a/pi d2b/pi exp(lambda(|a|^2 + |b|^2)) |a><b| (x) |b><a|
/// evaluated on the output of Phi1 (x) Phi2 acting on
/// psi_gamma ~ |gamma>|0> - |0>|gamma>.

/// End of the lambda range where the closed-form average is finite:
/// 1 - sqrt((tau1 - 1)(tau2 - 1) / (tau1 tau2)).
double lambda0(double tau1, double tau2);

struct WitnessEval {
  double lambda = 0.0;
  double value = 0.0;
  double lambda0 = 1.0;
  bool detected = false;
};

/// Closed-form tr{W_lambda (Phi1 (x) Phi2)[|psi_gamma><psi_gamma|]}.
/// Throws DomainError for lambda >= lambda0 and DegenerateState for gamma = 0.
double witness_average_closed_form(const ChannelParams& p1, const ChannelParams& p2,
                                   Complex gamma, double lambda);

/// Fock matrix of W_lambda: <i,j|W|j,i> = (1 - lambda)^{-(i+j+2)}.
/// Throws DomainError for lambda >= 1.
Eigen::MatrixXd witness_fock_matrix(double lambda, FockCutoff cutoff);

/// sum_{i,j} weight^{i+j} |i><j| (x) |j><i|, the geometric witness family.
Eigen::MatrixXd geometric_witness_matrix(double weight, FockCutoff cutoff);

/// tr{W_lambda rho} on the truncated space. Throws CutoffTooSmall when the
/// terms touching the guard band add up to more than tail_tol in magnitude.
double witness_average_numeric(const FockDensity& rho, double lambda,
                               double tail_tol = 1e-7);

/// Region where Phi1 (x) Phi2 keeps psi_gamma (gamma -> 0) entangled, via the
/// branch inequalities in the extra noises a1, a2.
bool prop2_region(const ChannelParams& p1, const ChannelParams& p2);

/// Same region written through (eta, tau):
/// 2 - eta1 - tau2 (2 - eta1 - eta2) > 0 and 2 - eta2 - tau1 (2 - eta1 - eta2) > 0.
bool prop2_region_eta_tau(const ChannelParams& p1, const ChannelParams& p2);

/// Total noise below which Phi(kappa, mu)^{(x)N} is not entanglement
/// annihilating: sqrt(kappa^2 + 1) / 2.
double corollary4_threshold(double kappa);

/// Coarse linear sweep over [lo, lambda0) refined geometrically towards
/// lambda0. Every point is strictly below lambda0.
std::vector<double> default_lambda_grid(double lambda0, int points = 256, double lo = -4.0);

struct Detection {
  bool detected = false;
  std::optional<double> best_lambda;
  double best_value = 0.0;
};

inline constexpr double kDetectionThreshold = 1e-12;

/// Scans the closed form over the grid points below lambda0, refines each local
/// minimum between its grid neighbours and reports the smallest value.
/// Detected iff it is below -kDetectionThreshold.
Detection detect_entanglement(const ChannelParams& p1, const ChannelParams& p2,
                              Complex gamma, const std::vector<double>& lambda_grid);

/// Same, with default_lambda_grid(lambda0(tau1, tau2)).
Detection detect_entanglement(const ChannelParams& p1, const ChannelParams& p2,
                              Complex gamma);

/// Critical total noise for Phi(kappa, mu) (x) Phi(kappa, mu): the witness
/// stops firing at the returned mu. Bisection bracket starts at |kappa-1|/2.
double witness_critical_noise_symmetric(double kappa, Complex gamma, double tol = 1e-3);

/// Critical extra noise a2 for fixed (kappa1, a1) and kappa2.
double witness_critical_extra_noise_second(double kappa1, double a1, double kappa2,
                                           Complex gamma, double tol = 1e-3);

}  // namespace cvea
