#pragma once

#include <functional>

#include "cvea/channel.hpp"

namespace cvea {

/// Largest total noise for which a TMSV of the given energy (photons) stays
/// entangled under Phi(kappa, mu) (x) Phi(kappa, mu); survival requires mu
/// strictly below the returned value.
double tmsv_survival_max_noise(double kappa, double energy);

/// Sufficient condition for annihilation of all Gaussian N-mode states,
/// tried with every mode in the distinguished role. Requires N >= 2.
bool corollary2_annihilates(const ChannelTuple& t);

/// Exact (iff) annihilation test for all two-mode Gaussian states:
/// kappa1 mu2 + kappa2 mu1 >= (kappa1 + kappa2) / 2.
bool corollary3_annihilates(const ChannelParams& p1, const ChannelParams& p2);

/// The mu2 at which corollary3_annihilates switches, for fixed (kappa1, mu1).
double corollary3_critical_noise(double kappa1, double mu1, double kappa2);

struct BisectionOptions {
  double tol = 1e-3;
  int max_iter = 40;
  /// Doublings of the upper bracket end allowed before giving up.
  int max_expansions = 20;
};

/// Smallest x in [lo, hi] where the monotone predicate becomes true. The
/// upper end is doubled away from lo while the predicate is still false.
/// Returns lo when the predicate already holds there. Throws NonConvergence
/// when no switch is found after max_expansions.
double bisect_switch(const std::function<bool(double)>& pred, double lo, double hi,
                     const BisectionOptions& opts = {});

/// Critical total noise for TMSV(r) under the formal map
/// Phi(kappa, mu) (x) Phi(kappa, mu), located with Simon's criterion by
/// bisection over mu starting at lo.
double simon_critical_noise_symmetric(double r, double kappa, double lo,
                                      const BisectionOptions& opts = {});

/// Critical mu2 for TMSV(r) under Phi(kappa1, mu1) (x) Phi(kappa2, mu2).
double simon_critical_noise_second(double r, double kappa1, double mu1, double kappa2,
                                   double lo, const BisectionOptions& opts = {});

}  // namespace cvea
