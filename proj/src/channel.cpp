#include "cvea/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvea/errors.hpp"

namespace cvea {

double quantum_limited_noise(double kappa) { return 0.5 * std::abs(kappa - 1.0); }

ChannelParams make_channel(double kappa, double mu) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidChannel("kappa must be positive and finite, got " + std::to_string(kappa));
  }
  const double mu_ql = quantum_limited_noise(kappa);
  if (!(mu >= mu_ql) || !std::isfinite(mu)) {
    throw InvalidChannel("noise mu = " + std::to_string(mu) +
                         " below the quantum limit |kappa - 1| / 2 = " + std::to_string(mu_ql));
  }
  ChannelParams p;
  p.kappa_ = kappa;
  p.mu_ = mu;
  p.a_ = mu - mu_ql;
  // Both branches of tau agree at kappa = 1.
  p.tau_ = std::max(kappa, 1.0) + p.a_;
  p.eta_ = kappa / p.tau_;
  return p;
}

ChannelParams make_channel_extra(double kappa, double a) {
  if (!(a >= 0.0)) {
    throw InvalidChannel("extra noise must be nonnegative, got " + std::to_string(a));
  }
  return make_channel(kappa, quantum_limited_noise(kappa) + a);
}

ChannelParams identity_channel() { return make_channel(1.0, 0.0); }

bool is_entanglement_breaking(const ChannelParams& p) {
  return p.a() >= std::min(p.kappa(), 1.0);
}

bool is_nlea_gaussian(const ChannelParams& p) { return p.mu() >= 0.5; }

}  // namespace cvea
