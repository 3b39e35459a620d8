#pragma once

#include <vector>

#include <Eigen/Dense>

namespace cvea::kernels {

struct Entry {
  int row;
  int col;
  double value;
};

/// Nonzero pattern of one real Kraus operator, grouped by row.
struct SparseKraus {
  std::vector<std::vector<Entry>> by_row;
  std::vector<Entry> all;
};

SparseKraus sparsify(const Eigen::MatrixXd& op, double threshold = 0.0);

/// sum_k (A_k (x) I) rho (A_k (x) I)^T for a two-mode rho of local dimension d.
/// OpenMP-parallel over output block rows; every output block is accumulated
/// by one thread in a fixed order, so the result does not depend on the
/// thread count.
Eigen::MatrixXcd apply_first_mode(const Eigen::MatrixXcd& rho, int d,
                                  const std::vector<SparseKraus>& ops);

/// Serial reference: explicit Kronecker products and dense multiplication.
Eigen::MatrixXcd apply_first_mode_reference(const Eigen::MatrixXcd& rho, int d,
                                            const std::vector<Eigen::MatrixXd>& ops);

}  // namespace cvea::kernels
