#include "cvea/witness.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "cvea/boundaries.hpp"
#include "cvea/errors.hpp"

namespace cvea {

double lambda0(double tau1, double tau2) {
  if (!(tau1 >= 1.0) || !(tau2 >= 1.0)) throw DomainError("lambda0 needs tau1, tau2 >= 1");
  return 1.0 - std::sqrt((tau1 - 1.0) * (tau2 - 1.0) / (tau1 * tau2));
}

double witness_average_closed_form(const ChannelParams& p1, const ChannelParams& p2,
                                   Complex gamma, double lambda) {
  if (gamma == Complex(0.0)) throw DegenerateState("witness average needs gamma != 0");
  const double t1 = p1.tau();
  const double t2 = p2.tau();
  const double l0 = lambda0(t1, t2);
  if (!(lambda < l0)) {
    throw DomainError("lambda = " + std::to_string(lambda) + " is not below lambda0 = " +
                      std::to_string(l0));
  }
  const double e1t1 = p1.eta() * t1;
  const double e2t2 = p2.eta() * t2;
  const double u = 1.0 - lambda;
  const double dd = t1 * t2 * u * u - (t1 - 1.0) * (t2 - 1.0);
  const double s = lambda * (2.0 - lambda);
  const double g = std::norm(gamma);

  const double x1 = e1t1 * (1.0 - s * t2) / dd;
  const double x2 = e2t2 * (1.0 - s * t1) / dd;
  const double x3 = 1.0 - std::sqrt(e1t1 * e2t2) * u / dd;
  // The normalization of psi_gamma is 2 (1 - e^{-|gamma|^2}).
  const double denom = 2.0 * -std::expm1(-g) * dd;
  // e^{-x1 g} + e^{-x2 g} - 2 e^{-x3 g}; the constant parts cancel, so sum the
  // expm1 remainders to keep precision for small |gamma|.
  const double top = std::max({-x1 * g, -x2 * g, -x3 * g});
  if (top < 600.0) {
    return (std::expm1(-x1 * g) + std::expm1(-x2 * g) - 2.0 * std::expm1(-x3 * g)) / denom;
  }
  // Close to lambda0 the exponents overflow; factor out the largest one. The
  // result may be a signed infinity but never NaN.
  const double scaled =
      std::exp(-x1 * g - top) + std::exp(-x2 * g - top) - 2.0 * std::exp(-x3 * g - top);
  return scaled * std::exp(top - std::log(denom));
}

Eigen::MatrixXd geometric_witness_matrix(double weight, FockCutoff cutoff) {
  const int d = cutoff.d();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(cutoff.dim(), cutoff.dim());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) w(i * d + j, j * d + i) = std::pow(weight, i + j);
  }
  return w;
}

Eigen::MatrixXd witness_fock_matrix(double lambda, FockCutoff cutoff) {
  if (!(lambda < 1.0)) throw DomainError("W_lambda needs lambda < 1");
  // <i,j|W|j,i> = (1 - lambda)^-(i+j+2).
  const double q = 1.0 / (1.0 - lambda);
  return (q * q) * geometric_witness_matrix(q, cutoff);
}

double witness_average_numeric(const FockDensity& rho, double lambda, double tail_tol) {
  if (!(lambda < 1.0)) throw DomainError("W_lambda needs lambda < 1");
  const int d = rho.cutoff().d();
  const int guarded = rho.cutoff().guarded_levels();
  const double log_q = -std::log1p(-lambda);
  const auto& m = rho.matrix();
  double sum = 0.0;
  double tail = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double term = std::exp((i + j + 2) * log_q) * m(j * d + i, i * d + j).real();
      sum += term;
      if (i >= guarded || j >= guarded) tail += std::abs(term);
    }
  }
  if (tail > tail_tol) {
    throw CutoffTooSmall("witness terms on the guard band add up to " + std::to_string(tail));
  }
  return sum;
}

bool prop2_region(const ChannelParams& p1, const ChannelParams& p2) {
  const double k1 = p1.kappa();
  const double k2 = p2.kappa();
  const double a1 = p1.a();
  const double a2 = p2.a();
  // Attenuator on the first mode, amplifier (or kappa = 1) on the second.
  auto mixed = [](double ka, double aa, double kb, double ab) {
    return aa < ka * (kb + ab) / (kb + 2.0 * ab) &&
           ab < 1.0 - kb * (1.0 + aa - ka) / (2.0 * (1.0 + aa) - ka);
  };
  if (k1 < 1.0 && k2 < 1.0) {
    return a1 < k1 * (1.0 + a2) / (2.0 * (1.0 + a2) - k2) &&
           a2 < k2 * (1.0 + a1) / (2.0 * (1.0 + a1) - k1);
  }
  if (k1 < 1.0) return mixed(k1, a1, k2, a2);
  if (k2 < 1.0) return mixed(k2, a2, k1, a1);
  return a1 < 1.0 - k1 * a2 / (k2 + 2.0 * a2) && a2 < 1.0 - k2 * a1 / (k1 + 2.0 * a1);
}

bool prop2_region_eta_tau(const ChannelParams& p1, const ChannelParams& p2) {
  const double loss = 2.0 - p1.eta() - p2.eta();
  return 2.0 - p1.eta() - p2.tau() * loss > 0.0 && 2.0 - p2.eta() - p1.tau() * loss > 0.0;
}

double corollary4_threshold(double kappa) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  return 0.5 * std::hypot(kappa, 1.0);
}

std::vector<double> default_lambda_grid(double lambda0, int points, double lo) {
  if (points < 4) throw DomainError("lambda grid needs at least 4 points");
  if (!(lo < lambda0)) throw DomainError("lambda grid lower end must be below lambda0");
  const int coarse = points / 2;
  const int fine = points - coarse;
  const double span = lambda0 - lo;
  const double step = span / coarse;
  std::vector<double> grid;
  grid.reserve(points);
  for (int i = 0; i < coarse; ++i) grid.push_back(lo + i * step);
  // Offsets from lambda0 running geometrically from half a coarse step to 1e-10.
  const double hi_off = 0.5 * step;
  const double lo_off = std::min(1e-10, 0.25 * step);
  const double ratio = std::pow(lo_off / hi_off, 1.0 / (fine - 1));
  double off = hi_off;
  for (int i = 0; i < fine; ++i) {
    grid.push_back(lambda0 - off);
    off *= ratio;
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Detection detect_entanglement(const ChannelParams& p1, const ChannelParams& p2, Complex gamma,
                              const std::vector<double>& lambda_grid) {
  const double l0 = lambda0(p1.tau(), p2.tau());
  auto value = [&](double lambda) { return witness_average_closed_form(p1, p2, gamma, lambda); };
  std::vector<double> grid;
  std::copy_if(lambda_grid.begin(), lambda_grid.end(), std::back_inserter(grid),
               [&](double l) { return l < l0; });
  std::sort(grid.begin(), grid.end());
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), value);

  Detection best;
  best.best_value = std::numeric_limits<double>::infinity();
  auto offer = [&](double lambda, double v) {
    if (v < best.best_value) {
      best.best_value = v;
      best.best_lambda = lambda;
    }
  };
  for (std::size_t i = 0; i < grid.size(); ++i) offer(grid[i], values[i]);
  // Near the boundary the negative window is narrower than the grid spacing,
  // so every interior local minimum is polished with Brent's method.
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (values[i] > values[i - 1] || values[i] > values[i + 1]) continue;
    const auto [lambda, v] =
        boost::math::tools::brent_find_minima(value, grid[i - 1], grid[i + 1], 52);
    offer(lambda, v);
  }
  best.detected = best.best_lambda.has_value() && best.best_value < -kDetectionThreshold;
  return best;
}

Detection detect_entanglement(const ChannelParams& p1, const ChannelParams& p2, Complex gamma) {
  return detect_entanglement(p1, p2, gamma, default_lambda_grid(lambda0(p1.tau(), p2.tau())));
}

double witness_critical_noise_symmetric(double kappa, Complex gamma, double tol) {
  const double mu_ql = quantum_limited_noise(kappa);
  auto silent = [&](double mu) {
    const auto p = make_channel(kappa, std::max(mu, mu_ql));
    return !detect_entanglement(p, p, gamma).detected;
  };
  return bisect_switch(silent, mu_ql, mu_ql + 2.0, {tol, 40, 20});
}

double witness_critical_extra_noise_second(double kappa1, double a1, double kappa2,
                                           Complex gamma, double tol) {
  const auto p1 = make_channel_extra(kappa1, a1);
  auto silent = [&](double a2) {
    return !detect_entanglement(p1, make_channel_extra(kappa2, std::max(a2, 0.0)), gamma)
                .detected;
  };
  return bisect_switch(silent, 0.0, 2.0, {tol, 40, 20});
}

}  // namespace cvea
