#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cvea/errors.hpp"
#include "cvea/fock.hpp"

namespace cvea {

Eigen::MatrixXcd swap_modes(const Eigen::MatrixXcd& rho, int d) {
  Eigen::MatrixXcd out(rho.rows(), rho.cols());
  for (int m1 = 0; m1 < d; ++m1) {
    for (int m2 = 0; m2 < d; ++m2) {
      for (int n1 = 0; n1 < d; ++n1) {
        for (int n2 = 0; n2 < d; ++n2) {
          out(n2 * d + n1, m2 * d + m1) = rho(n1 * d + n2, m1 * d + m2);
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXcd partial_transpose(const FockDensity& rho, Mode mode) {
  const int d = rho.cutoff().d();
  const auto& in = rho.matrix();
  Eigen::MatrixXcd out(in.rows(), in.cols());
  for (int m1 = 0; m1 < d; ++m1) {
    for (int m2 = 0; m2 < d; ++m2) {
      for (int n1 = 0; n1 < d; ++n1) {
        for (int n2 = 0; n2 < d; ++n2) {
          out(n1 * d + n2, m1 * d + m2) = mode == Mode::first
                                              ? in(m1 * d + n2, n1 * d + m2)
                                              : in(n1 * d + m2, m1 * d + n2);
        }
      }
    }
  }
  return out;
}

double negativity(const FockDensity& rho, Mode mode, double floor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(partial_transpose(rho, mode),
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NonConvergence("eigen-solver failed on rho^T");
  double sum = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev < -floor) sum -= ev;
  }
  return sum;
}

namespace {

// <(b1^dag)^c1 b1^a1 (b2^dag)^c2 b2^a2>, unnormalized.
Complex normal_moment(const Eigen::MatrixXcd& rho, int d, int c1, int a1, int c2, int a2) {
  auto falling = [](int m, int k) {
    double f = 1.0;
    for (int i = 0; i < k; ++i) f *= m - i;
    return f;
  };
  Complex sum = 0.0;
  for (int m1 = a1; m1 < d; ++m1) {
    const int n1 = m1 - a1 + c1;
    if (n1 >= d) continue;
    const double w1 = std::sqrt(falling(m1, a1) * falling(n1, c1));
    for (int m2 = a2; m2 < d; ++m2) {
      const int n2 = m2 - a2 + c2;
      if (n2 >= d) continue;
      const double w2 = std::sqrt(falling(m2, a2) * falling(n2, c2));
      // tr(rho O) = sum_m rho(m, n) O(n, m) with O|m> = w |n>.
      sum += rho(m1 * d + m2, n1 * d + n2) * (w1 * w2);
    }
  }
  return sum;
}

struct Ladder {
  int mode;
  bool dagger;
};

}  // namespace

double mean_photon_number(const FockDensity& rho) {
  const int d = rho.cutoff().d();
  return (normal_moment(rho.matrix(), d, 1, 1, 0, 0) + normal_moment(rho.matrix(), d, 0, 0, 1, 1))
      .real();
}

Moments moments(const FockDensity& rho) {
  const int d = rho.cutoff().d();
  const auto& m = rho.matrix();
  const double tr = rho.trace();

  auto first = [&](Ladder l) {
    std::array<int, 4> p{0, 0, 0, 0};
    p[2 * l.mode + (l.dagger ? 0 : 1)] = 1;
    return normal_moment(m, d, p[0], p[1], p[2], p[3]) / tr;
  };
  auto second = [&](Ladder x, Ladder y) {
    std::array<int, 4> p{0, 0, 0, 0};
    p[2 * x.mode + (x.dagger ? 0 : 1)] += 1;
    p[2 * y.mode + (y.dagger ? 0 : 1)] += 1;
    Complex v = normal_moment(m, d, p[0], p[1], p[2], p[3]) / tr;
    // b b^dag = b^dag b + 1 on the same mode.
    if (x.mode == y.mode && !x.dagger && y.dagger) v += 1.0;
    return v;
  };

  // q = (b + b^dag)/sqrt2, p = -i/sqrt2 b + i/sqrt2 b^dag, per mode.
  const Complex s(M_SQRT1_2, 0.0);
  const Complex is(0.0, M_SQRT1_2);
  struct Quadrature {
    int mode;
    Complex u_b;
    Complex u_bdag;
  };
  const std::array<Quadrature, 4> r{{{0, s, s}, {0, -is, is}, {1, s, s}, {1, -is, is}}};

  Eigen::Vector4d mean;
  for (int i = 0; i < 4; ++i) {
    mean(i) = (r[i].u_b * first({r[i].mode, false}) + r[i].u_bdag * first({r[i].mode, true}))
                  .real();
  }
  auto product = [&](const Quadrature& x, const Quadrature& y) {
    return x.u_b * y.u_b * second({x.mode, false}, {y.mode, false}) +
           x.u_b * y.u_bdag * second({x.mode, false}, {y.mode, true}) +
           x.u_bdag * y.u_b * second({x.mode, true}, {y.mode, false}) +
           x.u_bdag * y.u_bdag * second({x.mode, true}, {y.mode, true});
  };
  Eigen::Matrix4d v;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const double sym = 0.5 * (product(r[i], r[j]) + product(r[j], r[i])).real();
      v(i, j) = v(j, i) = sym - mean(i) * mean(j);
    }
  }
  return Moments{mean, CovarianceMatrix(v)};
}

}  // namespace cvea
