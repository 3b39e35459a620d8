#pragma once

#include <vector>

namespace cvea {

/// One-mode phase-insensitive Gaussian channel Phi(kappa, mu).
///
/// kappa is the power gain (kappa < 1 attenuates, kappa > 1 amplifies) and mu
/// the total added noise per quadrature, in units where the vacuum variance is
/// 1/2. The channel factors as a quantum-limited attenuator with parameter
/// eta followed by a quantum-limited amplifier with gain tau.
class ChannelParams {
 public:
  double kappa() const { return kappa_; }
  double mu() const { return mu_; }
  /// Extra noise above the quantum limit, mu - |kappa - 1| / 2.
  double a() const { return a_; }
  double eta() const { return eta_; }
  double tau() const { return tau_; }

  bool quantum_limited() const { return a_ == 0.0; }

  friend ChannelParams make_channel(double kappa, double mu);

 private:
  ChannelParams() = default;

  double kappa_ = 1.0;
  double mu_ = 0.0;
  double a_ = 0.0;
  double eta_ = 1.0;
  double tau_ = 1.0;
};

using ChannelTuple = std::vector<ChannelParams>;

/// Minimal noise |kappa - 1| / 2 compatible with complete positivity.
double quantum_limited_noise(double kappa);

/// Throws InvalidChannel when kappa <= 0 or mu < |kappa - 1| / 2.
ChannelParams make_channel(double kappa, double mu);

/// Same channel parameterized by the extra noise a >= 0.
ChannelParams make_channel_extra(double kappa, double a);

ChannelParams identity_channel();

bool is_entanglement_breaking(const ChannelParams& p);

/// Phi^{(x)N} annihilates the entanglement of every Gaussian N-mode state,
/// for every N >= 2, exactly when mu >= 1/2.
bool is_nlea_gaussian(const ChannelParams& p);

}  // namespace cvea
