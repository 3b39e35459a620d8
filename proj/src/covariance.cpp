#include "cvea/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "cvea/errors.hpp"

namespace cvea {

namespace {

constexpr double kSymmetryTol = 1e-9;

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0 || entries_.rows() % 2 != 0) {
    throw DimensionMismatch("covariance matrix must be square with even size");
  }
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw DomainError("covariance matrix is not symmetric");
  }
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) { return thermal(n_modes, 0.5); }

CovarianceMatrix CovarianceMatrix::thermal(int n_modes, double nu) {
  return CovarianceMatrix(nu * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    delta(2 * i, 2 * i + 1) = -1.0;
    delta(2 * i + 1, 2 * i) = 1.0;
  }
  return delta;
}

CovarianceMatrix scale_and_add_noise(const CovarianceMatrix& v, std::span<const double> kappas,
                                     std::span<const double> mus) {
  const int n = v.n_modes();
  if (static_cast<int>(kappas.size()) != n || static_cast<int>(mus.size()) != n) {
    throw DimensionMismatch("channel tuple length does not match the mode count");
  }
  Eigen::VectorXd k(2 * n);
  for (int i = 0; i < n; ++i) {
    k(2 * i) = k(2 * i + 1) = std::sqrt(kappas[i]);
  }
  Eigen::MatrixXd out = k.asDiagonal() * v.entries() * k.asDiagonal();
  for (int i = 0; i < n; ++i) {
    out(2 * i, 2 * i) += mus[i];
    out(2 * i + 1, 2 * i + 1) += mus[i];
  }
  return CovarianceMatrix(std::move(out));
}

CovarianceMatrix apply_channel(const CovarianceMatrix& v, const ChannelTuple& t) {
  std::vector<double> kappas;
  std::vector<double> mus;
  for (const auto& p : t) {
    kappas.push_back(p.kappa());
    mus.push_back(p.mu());
  }
  return scale_and_add_noise(v, kappas, mus);
}

CovarianceMatrix tmsv_covariance(double r) {
  if (!(r >= 0.0)) throw DomainError("squeezing r must be nonnegative");
  const double c = 0.5 * std::cosh(2.0 * r);
  const double s = 0.5 * std::sinh(2.0 * r);
  Eigen::Matrix4d v;
  // clang-format off
  v << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  // clang-format on
  return CovarianceMatrix(v);
}

double tmsv_energy(double r) {
  if (!(r >= 0.0)) throw DomainError("squeezing r must be nonnegative");
  return std::cosh(2.0 * r) - 1.0;
}

double tmsv_squeezing_for_energy(double energy) {
  if (!(energy >= 0.0)) throw DomainError("energy must be nonnegative");
  return 0.5 * std::acosh(1.0 + energy);
}

std::vector<double> symplectic_eigenvalues_general(const CovarianceMatrix& v) {
  const int n = v.n_modes();
  const Eigen::MatrixXd dv = symplectic_form(n) * v.entries();
  Eigen::EigenSolver<Eigen::MatrixXd> es(dv, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NonConvergence("eigen-solver failed on Delta V");
  std::vector<double> mags;
  mags.reserve(2 * n);
  for (int i = 0; i < 2 * n; ++i) mags.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(mags.begin(), mags.end());
  // Eigenvalues come in pairs +-i nu; take one representative per pair.
  std::vector<double> nu;
  nu.reserve(n);
  for (int i = 0; i < n; ++i) nu.push_back(0.5 * (mags[2 * i] + mags[2 * i + 1]));
  return nu;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
  const int n = v.n_modes();
  Eigen::LLT<Eigen::MatrixXd> llt(v.entries());
  if (llt.info() != Eigen::Success) return symplectic_eigenvalues_general(v);
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXcd h =
      std::complex<double>(0.0, 1.0) * (l.transpose() * symplectic_form(n) * l);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NonConvergence("eigen-solver failed on L^T i Delta L");
  // Ascending spectrum -nu_max..-nu_min, nu_min..nu_max.
  std::vector<double> nu;
  nu.reserve(n);
  for (int i = 0; i < n; ++i) {
    nu.push_back(0.5 * (es.eigenvalues()(n + i) - es.eigenvalues()(n - 1 - i)));
  }
  return nu;
}

bool is_physical(const CovarianceMatrix& v, double tol) {
  const auto nu = symplectic_eigenvalues(v);
  return nu.front() >= 0.5 - tol;
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& v, int mode) {
  if (mode < 0 || mode >= v.n_modes()) throw DimensionMismatch("mode index out of range");
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(2 * v.n_modes());
  flip(2 * mode + 1) = -1.0;
  return CovarianceMatrix(flip.asDiagonal() * v.entries() * flip.asDiagonal());
}

double min_pt_symplectic_eigenvalue(const CovarianceMatrix& v) {
  return symplectic_eigenvalues(partial_transpose(v, v.n_modes() - 1)).front();
}

bool simon_separable(const CovarianceMatrix& v, double tol) {
  if (v.n_modes() != 2) throw DimensionMismatch("Simon's criterion needs a two-mode state");
  return min_pt_symplectic_eigenvalue(v) >= 0.5 - tol;
}

}  // namespace cvea
