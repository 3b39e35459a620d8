#include "cvea/boundaries.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cvea/covariance.hpp"
#include "cvea/errors.hpp"

namespace cvea {

double tmsv_survival_max_noise(double kappa, double energy) {
  if (!(kappa > 0.0) || !(energy > 0.0)) throw DomainError("kappa and energy must be positive");
  // sqrt(E(2+E)) - E written without cancellation for large E.
  const double gap = 2.0 * energy / (std::sqrt(energy * (2.0 + energy)) + energy);
  return 0.5 * (1.0 - kappa + kappa * gap);
}

bool corollary2_annihilates(const ChannelTuple& t) {
  if (t.size() < 2) throw DimensionMismatch("need at least two modes");
  for (std::size_t j = 0; j < t.size(); ++j) {
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i != j) s = std::min(s, (2.0 * t[i].mu() - 1.0) / t[i].kappa());
    }
    if (s >= 0.0 && t[j].mu() >= 0.5 * (1.0 - s * t[j].kappa())) return true;
  }
  return false;
}

bool corollary3_annihilates(const ChannelParams& p1, const ChannelParams& p2) {
  return p1.kappa() * p2.mu() + p2.kappa() * p1.mu() >= 0.5 * (p1.kappa() + p2.kappa());
}

double corollary3_critical_noise(double kappa1, double mu1, double kappa2) {
  return (0.5 * (kappa1 + kappa2) - kappa2 * mu1) / kappa1;
}

double bisect_switch(const std::function<bool(double)>& pred, double lo, double hi,
                     const BisectionOptions& opts) {
  if (!(hi > lo)) throw DomainError("bisection bracket is empty");
  if (pred(lo)) return lo;
  int expansions = 0;
  while (!pred(hi)) {
    if (++expansions > opts.max_expansions) {
      throw NonConvergence("predicate never switched inside the expanded bracket");
    }
    const double width = hi - lo;
    lo = hi;
    hi += 2.0 * width;
  }
  for (int it = 0; it < opts.max_iter && hi - lo > opts.tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double simon_critical_noise_symmetric(double r, double kappa, double lo,
                                      const BisectionOptions& opts) {
  const CovarianceMatrix v = tmsv_covariance(r);
  const std::array<double, 2> kappas{kappa, kappa};
  auto separable = [&](double mu) {
    const std::array<double, 2> mus{mu, mu};
    return simon_separable(scale_and_add_noise(v, kappas, mus));
  };
  return bisect_switch(separable, lo, lo + 2.0, opts);
}

double simon_critical_noise_second(double r, double kappa1, double mu1, double kappa2,
                                   double lo, const BisectionOptions& opts) {
  const CovarianceMatrix v = tmsv_covariance(r);
  const std::array<double, 2> kappas{kappa1, kappa2};
  auto separable = [&](double mu2) {
    const std::array<double, 2> mus{mu1, mu2};
    return simon_separable(scale_and_add_noise(v, kappas, mus));
  };
  return bisect_switch(separable, lo, lo + 2.0, opts);
}

}  // namespace cvea
