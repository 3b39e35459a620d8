#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cvea/channel.hpp"
#include "cvea/fock.hpp"

namespace cvea {

/// A one-mode channel on the truncated space, stored as an ordered list of
/// stages. Each stage is a Kraus family; the channel is their composition
/// with stage 0 applied first. Keeping the stages apart avoids materializing
/// the d^2 products B_j A_i of a composite channel.
///
/// All Kraus operators of phase-insensitive channels are real in the Fock
/// basis, so they are stored as real matrices.
struct KrausSet {
  FockCutoff cutoff;
  std::vector<std::vector<Eigen::MatrixXd>> stages;
  /// Largest deviation of the composite sum A^dag A from the identity on the
  /// guarded levels 0..d-g-1.
  double truncation_error = 0.0;

  std::size_t operator_count() const;
  /// Kraus operators of a single-stage set.
  const std::vector<Eigen::MatrixXd>& operators() const;
};

/// Composite completeness matrix sum_{i,j} (B_j A_i)^T (B_j A_i).
Eigen::MatrixXd completeness(const KrausSet& ks);

/// Deviation of completeness(ks) from the identity on the first `levels` levels
/// (spectral norm).
double completeness_deficit(const KrausSet& ks, int levels);

/// Quantum-limited attenuator: binomial loss ladder. Exact on the truncated
/// space. Throws DomainError unless eta in (0, 1].
KrausSet ql_attenuator_kraus(double eta, FockCutoff cutoff);

/// Quantum-limited amplifier from the two-mode-squeezer dilation. Leaks
/// probability above the cutoff; the leak on guarded levels is reported in
/// truncation_error. Throws DomainError unless tau >= 1, and CutoffTooSmall
/// when truncation_error would exceed max_truncation_error.
KrausSet ql_amplifier_kraus(double tau, FockCutoff cutoff,
                            double max_truncation_error = 1.0);

/// Phi(kappa, mu) as amplifier(tau) after attenuator(eta). Identity stages
/// are dropped, so a quantum-limited attenuator yields a single stage.
KrausSet channel_kraus(const ChannelParams& p, FockCutoff cutoff,
                       double max_truncation_error = 1.0);

/// max(20, ceil(8 tau (1 + mean_photons_in))).
int recommended_cutoff(double tau, double mean_photons_in);

/// sum_k (A_k (x) I) rho (A_k (x) I)^dag (or I (x) A_k), stage by stage.
/// Throws DimensionMismatch when the cutoffs differ.
FockDensity apply_to_mode(const FockDensity& rho, const KrausSet& ks, Mode mode);

/// Serial dense-Kronecker reference for apply_to_mode. O(d^6) per operator;
/// for tests and benchmarks only.
FockDensity apply_to_mode_reference(const FockDensity& rho, const KrausSet& ks, Mode mode);

/// (Phi1 (x) Phi2)[rho].
FockDensity apply_local_channels(const FockDensity& rho, const KrausSet& first,
                                 const KrausSet& second);

}  // namespace cvea
