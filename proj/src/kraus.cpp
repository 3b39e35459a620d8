#include "cvea/kraus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "cvea/errors.hpp"
#include "cvea/kernels.hpp"

namespace cvea {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

KrausSet single_stage(FockCutoff cutoff, std::vector<Eigen::MatrixXd> ops) {
  KrausSet ks{cutoff, {std::move(ops)}, 0.0};
  ks.truncation_error = completeness_deficit(ks, cutoff.guarded_levels());
  return ks;
}

}  // namespace

std::size_t KrausSet::operator_count() const {
  std::size_t n = 1;
  for (const auto& s : stages) n *= s.size();
  return n;
}

const std::vector<Eigen::MatrixXd>& KrausSet::operators() const {
  if (stages.size() != 1) throw DomainError("Kraus set has more than one stage");
  return stages.front();
}

Eigen::MatrixXd completeness(const KrausSet& ks) {
  const int d = ks.cutoff.d();
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(d, d);
  for (auto stage = ks.stages.rbegin(); stage != ks.stages.rend(); ++stage) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(d, d);
    for (const auto& a : *stage) next.noalias() += a.transpose() * c * a;
    c = std::move(next);
  }
  return c;
}

double completeness_deficit(const KrausSet& ks, int levels) {
  const int d = ks.cutoff.d();
  levels = std::clamp(levels, 0, d);
  if (levels == 0) return 0.0;
  const Eigen::MatrixXd block =
      Eigen::MatrixXd::Identity(levels, levels) - completeness(ks).topLeftCorner(levels, levels);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

KrausSet ql_attenuator_kraus(double eta, FockCutoff cutoff) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("attenuator needs eta in (0, 1]");
  const int d = cutoff.d();
  if (eta == 1.0) return single_stage(cutoff, {Eigen::MatrixXd::Identity(d, d)});
  // A_k |n> = sqrt(C(n, k) eta^(n-k) (1-eta)^k) |n - k>.
  std::vector<Eigen::MatrixXd> ops;
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int n = k; n < d; ++n) {
      a(n - k, n) = std::exp(0.5 * (log_binomial(n, k) + (n - k) * std::log(eta) +
                                    k * std::log1p(-eta)));
    }
    ops.push_back(std::move(a));
  }
  return single_stage(cutoff, std::move(ops));
}

KrausSet ql_amplifier_kraus(double tau, FockCutoff cutoff, double max_truncation_error) {
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw DomainError("amplifier needs tau >= 1");
  const int d = cutoff.d();
  if (tau == 1.0) return single_stage(cutoff, {Eigen::MatrixXd::Identity(d, d)});
  // B_k |n> = sqrt(C(n + k, k) tau^-(n+1) (1 - 1/tau)^k) |n + k>, from tracing
  // out the idler of a two-mode squeezer with cosh^2 r = tau.
  std::vector<Eigen::MatrixXd> ops;
  const double log_gain = -std::log(tau);
  const double log_leak = std::log1p(-1.0 / tau);
  for (int k = 0; k < d; ++k) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
    for (int n = 0; n + k < d; ++n) {
      b(n + k, n) = std::exp(0.5 * (log_binomial(n + k, k) + (n + 1) * log_gain + k * log_leak));
    }
    ops.push_back(std::move(b));
  }
  KrausSet ks = single_stage(cutoff, std::move(ops));
  if (ks.truncation_error > max_truncation_error) {
    throw CutoffTooSmall("amplifier tau = " + std::to_string(tau) + " leaks " +
                         std::to_string(ks.truncation_error) + " at cutoff " +
                         std::to_string(d));
  }
  return ks;
}

KrausSet channel_kraus(const ChannelParams& p, FockCutoff cutoff, double max_truncation_error) {
  const int d = cutoff.d();
  KrausSet ks{cutoff, {}, 0.0};
  if (p.eta() < 1.0) ks.stages.push_back(ql_attenuator_kraus(p.eta(), cutoff).stages.front());
  if (p.tau() > 1.0) ks.stages.push_back(ql_amplifier_kraus(p.tau(), cutoff).stages.front());
  if (ks.stages.empty()) ks.stages.push_back({Eigen::MatrixXd::Identity(d, d)});
  ks.truncation_error = completeness_deficit(ks, cutoff.guarded_levels());
  if (ks.truncation_error > max_truncation_error) {
    throw CutoffTooSmall("channel (kappa = " + std::to_string(p.kappa()) +
                         ", mu = " + std::to_string(p.mu()) + ") leaks " +
                         std::to_string(ks.truncation_error) + " at cutoff " +
                         std::to_string(d));
  }
  return ks;
}

int recommended_cutoff(double tau, double mean_photons_in) {
  return std::max(20, static_cast<int>(std::ceil(8.0 * tau * (1.0 + mean_photons_in))));
}

namespace {

void check_cutoff(const FockDensity& rho, const KrausSet& ks) {
  if (!(rho.cutoff() == ks.cutoff)) {
    throw DimensionMismatch("Kraus set cutoff " + std::to_string(ks.cutoff.d()) +
                            " does not match state cutoff " + std::to_string(rho.cutoff().d()));
  }
}

}  // namespace

FockDensity apply_to_mode(const FockDensity& rho, const KrausSet& ks, Mode mode) {
  check_cutoff(rho, ks);
  const int d = rho.cutoff().d();
  Eigen::MatrixXcd m = mode == Mode::first ? rho.matrix() : swap_modes(rho.matrix(), d);
  for (const auto& stage : ks.stages) {
    std::vector<kernels::SparseKraus> sparse;
    sparse.reserve(stage.size());
    for (const auto& a : stage) sparse.push_back(kernels::sparsify(a));
    m = kernels::apply_first_mode(m, d, sparse);
  }
  if (mode == Mode::second) m = swap_modes(m, d);
  return FockDensity(rho.cutoff(), std::move(m));
}

FockDensity apply_to_mode_reference(const FockDensity& rho, const KrausSet& ks, Mode mode) {
  check_cutoff(rho, ks);
  const int d = rho.cutoff().d();
  Eigen::MatrixXcd m = mode == Mode::first ? rho.matrix() : swap_modes(rho.matrix(), d);
  for (const auto& stage : ks.stages) m = kernels::apply_first_mode_reference(m, d, stage);
  if (mode == Mode::second) m = swap_modes(m, d);
  return FockDensity(rho.cutoff(), std::move(m));
}

FockDensity apply_local_channels(const FockDensity& rho, const KrausSet& first,
                                 const KrausSet& second) {
  return apply_to_mode(apply_to_mode(rho, first, Mode::first), second, Mode::second);
}

}  // namespace cvea
