#include <cmath>
#include <string>

#include "cvea/errors.hpp"
#include "cvea/fock.hpp"

namespace cvea {

FockCutoff::FockCutoff(int d) : d_(d) {
  if (d < 2) throw DomainError("Fock cutoff must be at least 2, got " + std::to_string(d));
}

FockState::FockState(FockCutoff cutoff, Eigen::VectorXcd amplitudes)
    : cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != cutoff_.dim()) {
    throw DimensionMismatch("state vector length must be d^2");
  }
}

FockDensity::FockDensity(FockCutoff cutoff, Eigen::MatrixXcd matrix)
    : cutoff_(cutoff), matrix_(std::move(matrix)) {
  if (matrix_.rows() != cutoff_.dim() || matrix_.cols() != cutoff_.dim()) {
    throw DimensionMismatch("density matrix must be d^2 x d^2");
  }
}

FockDensity FockDensity::from_pure(const FockState& psi) {
  return FockDensity(psi.cutoff(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double coherent_tail_mass(double abs_gamma, int d) {
  const double g = abs_gamma * abs_gamma;
  if (g == 0.0) return 0.0;
  double term = std::exp(-g + d * std::log(g) - std::lgamma(d + 1.0));
  double sum = 0.0;
  for (int n = d; term > 1e-300 && term > 1e-18 * sum; ++n) {
    sum += term;
    term *= g / (n + 1.0);
  }
  return sum;
}

Eigen::VectorXcd coherent_state(Complex gamma, FockCutoff cutoff, double max_tail) {
  const int d = cutoff.d();
  const double tail = coherent_tail_mass(std::abs(gamma), d);
  if (tail > max_tail) {
    throw CutoffTooSmall("coherent state loses " + std::to_string(tail) +
                         " of its norm at cutoff " + std::to_string(d));
  }
  Eigen::VectorXcd c(d);
  c(0) = std::exp(-0.5 * std::norm(gamma));
  for (int n = 1; n < d; ++n) c(n) = c(n - 1) * gamma / std::sqrt(static_cast<double>(n));
  return c;
}

double psi_gamma_energy(double abs_gamma) {
  const double g = abs_gamma * abs_gamma;
  if (g == 0.0) return 1.0;
  return g / -std::expm1(-g);
}

FockState psi_gamma_state(Complex gamma, FockCutoff cutoff) {
  if (gamma == Complex(0.0)) throw DegenerateState("psi_gamma needs gamma != 0");
  const int d = cutoff.d();
  const double g = std::norm(gamma);
  const double weight = -std::expm1(-g);  // 1 - exp(-|gamma|^2), the norm of |gamma> - |0> part
  if (coherent_tail_mass(std::abs(gamma), d) > 1e-8 * weight) {
    throw CutoffTooSmall("psi_gamma truncated too hard at cutoff " + std::to_string(d));
  }
  const Eigen::VectorXcd c = coherent_state(gamma, cutoff, 1.0);
  const double norm = 1.0 / std::sqrt(2.0 * weight);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(cutoff.dim());
  for (int n = 1; n < d; ++n) {
    amp(n * d) = norm * c(n);
    amp(n) = -norm * c(n);
  }
  return FockState(cutoff, std::move(amp));
}

FockState psi_n_state(int n, int sign, FockCutoff cutoff) {
  if (n < 1) throw DomainError("psi_n needs n >= 1");
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  if (n >= cutoff.d()) throw CutoffTooSmall("level n must be below the cutoff");
  const int d = cutoff.d();
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(cutoff.dim());
  amp(n * d) = M_SQRT1_2;
  amp(n) = sign * M_SQRT1_2;
  return FockState(cutoff, std::move(amp));
}

FockState tmsv_state(double r, FockCutoff cutoff) {
  if (!(r >= 0.0)) throw DomainError("squeezing r must be nonnegative");
  const int d = cutoff.d();
  const double t = std::tanh(r);
  const double tail = std::pow(t, 2.0 * d);
  if (tail > 1e-8) {
    throw CutoffTooSmall("TMSV loses " + std::to_string(tail) + " of its norm at cutoff " +
                         std::to_string(d));
  }
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(cutoff.dim());
  double c = 1.0 / std::cosh(r);  // sqrt(1 - tanh^2 r)
  for (int n = 0; n < d; ++n) {
    amp(n * d + n) = c;
    c *= t;
  }
  return FockState(cutoff, std::move(amp));
}

FockState product_state(const Eigen::VectorXcd& first, const Eigen::VectorXcd& second) {
  if (first.size() != second.size()) throw DimensionMismatch("modes need the same cutoff");
  const int d = static_cast<int>(first.size());
  Eigen::VectorXcd amp(d * d);
  for (int n1 = 0; n1 < d; ++n1) {
    for (int n2 = 0; n2 < d; ++n2) amp(n1 * d + n2) = first(n1) * second(n2);
  }
  return FockState(FockCutoff(d), std::move(amp));
}

}  // namespace cvea
