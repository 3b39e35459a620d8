#include "cvea/kernels.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace cvea::kernels {

SparseKraus sparsify(const Eigen::MatrixXd& op, double threshold) {
  SparseKraus s;
  s.by_row.resize(op.rows());
  for (int j = 0; j < op.cols(); ++j) {
    for (int i = 0; i < op.rows(); ++i) {
      const double v = op(i, j);
      if (std::abs(v) > threshold) {
        s.by_row[i].push_back({i, j, v});
        s.all.push_back({i, j, v});
      }
    }
  }
  return s;
}

Eigen::MatrixXcd apply_first_mode(const Eigen::MatrixXcd& rho, int d,
                                  const std::vector<SparseKraus>& ops) {
  // rho viewed as d x d blocks indexed by (n1, m1); each block spans the
  // second mode. out(a, b) = sum_k sum A_k(a, n1) A_k(b, m1) rho(n1, m1).
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < d; ++a) {
    for (const auto& op : ops) {
      for (const auto& left : op.by_row[a]) {
        for (const auto& right : op.all) {
          out.block(a * d, right.row * d, d, d).noalias() +=
              (left.value * right.value) * rho.block(left.col * d, right.col * d, d, d);
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXcd apply_first_mode_reference(const Eigen::MatrixXcd& rho, int d,
                                            const std::vector<Eigen::MatrixXd>& ops) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& a : ops) {
    const Eigen::MatrixXcd big = Eigen::kroneckerProduct(a, id).cast<std::complex<double>>();
    out += big * rho * big.adjoint();
  }
  return out;
}

}  // namespace cvea::kernels
