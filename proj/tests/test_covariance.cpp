#include <doctest.h>

#include <cmath>
#include <random>

#include "cvea/covariance.hpp"
#include "cvea/errors.hpp"

using namespace cvea;

namespace {

// Random physical covariance: thermal diag(nu) dressed by local squeezers,
// rotations and a beam splitter.
CovarianceMatrix random_physical(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
  auto local = [&](int mode, double sq, double phi) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    Eigen::Matrix2d rot;
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    const Eigen::Matrix2d squeeze = Eigen::Vector2d(std::exp(sq), std::exp(-sq)).asDiagonal();
    m.block<2, 2>(2 * mode, 2 * mode) = rot * squeeze;
    return m;
  };
  const double theta = 2.0 * M_PI * u(rng);
  Eigen::Matrix4d bs = Eigen::Matrix4d::Zero();
  bs.block<2, 2>(0, 0) = bs.block<2, 2>(2, 2) = std::cos(theta) * Eigen::Matrix2d::Identity();
  bs.block<2, 2>(0, 2) = std::sin(theta) * Eigen::Matrix2d::Identity();
  bs.block<2, 2>(2, 0) = -std::sin(theta) * Eigen::Matrix2d::Identity();
  s = local(0, u(rng) - 0.5, 6.0 * u(rng)) * bs * local(1, 1.2 * u(rng), 6.0 * u(rng)) *
      local(0, 0.8 * u(rng), 6.0 * u(rng));
  const double nu1 = 0.5 + 2.0 * u(rng);
  const double nu2 = 0.5 + 2.0 * u(rng);
  const Eigen::Matrix4d d = Eigen::Vector4d(nu1, nu1, nu2, nu2).asDiagonal();
  return CovarianceMatrix(s * d * s.transpose());
}

}  // namespace

TEST_CASE("covariance matrix validation") {
  CHECK_THROWS_AS(CovarianceMatrix{Eigen::MatrixXd::Identity(3, 3)}, DimensionMismatch);
  CHECK_THROWS_AS(CovarianceMatrix{Eigen::MatrixXd::Identity(2, 4)}, DimensionMismatch);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
  asym(0, 1) = 0.3;
  CHECK_THROWS_AS(CovarianceMatrix{asym}, DomainError);
}

TEST_CASE("apply_channel") {
  SUBCASE("vacuum under two amplifiers") {
    const auto p = make_channel(2.0, 0.5);
    const auto out = apply_channel(CovarianceMatrix::vacuum(2), {p, p});
    CHECK((out.entries() - 1.5 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("identity channel leaves V unchanged") {
    const auto v = tmsv_covariance(0.8);
    const auto out = apply_channel(v, {identity_channel(), identity_channel()});
    CHECK((out.entries() - v.entries()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("TMSV(1) through quantum-limited attenuators") {
    const auto p = make_channel(0.5, 0.25);
    const auto out = apply_channel(tmsv_covariance(1.0), {p, p});
    const double diag = 0.5 * (0.5 * std::cosh(2.0) + 0.5);
    const double off = 0.25 * std::sinh(2.0);
    for (int i = 0; i < 4; ++i) CHECK(out(i, i) == doctest::Approx(diag).epsilon(1e-14));
    CHECK(out(0, 2) == doctest::Approx(off).epsilon(1e-14));
    CHECK(out(1, 3) == doctest::Approx(-off).epsilon(1e-14));
    CHECK(out(0, 1) == 0.0);
  }
  SUBCASE("mode count mismatch") {
    CHECK_THROWS_AS(apply_channel(tmsv_covariance(0.1), {identity_channel()}), DimensionMismatch);
  }
  SUBCASE("asymmetric scaling") {
    const auto p1 = make_channel(0.3, 0.5);
    const auto p2 = make_channel(3.0, 1.0);
    const auto out = apply_channel(tmsv_covariance(0.5), {p1, p2});
    CHECK(out(0, 0) == doctest::Approx(0.3 * 0.5 * std::cosh(1.0) + 0.5));
    CHECK(out(2, 2) == doctest::Approx(3.0 * 0.5 * std::cosh(1.0) + 1.0));
    CHECK(out(0, 2) == doctest::Approx(std::sqrt(0.9) * 0.5 * std::sinh(1.0)));
  }
}

TEST_CASE("TMSV covariance and energy") {
  const auto v0 = tmsv_covariance(0.0);
  CHECK((v0.entries() - 0.5 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  const auto v1 = tmsv_covariance(1.0);
  CHECK(v1(0, 0) == doctest::Approx(1.8810978).epsilon(1e-7));
  CHECK(v1(0, 2) == doctest::Approx(1.8134302).epsilon(1e-7));
  CHECK(v1(1, 3) == doctest::Approx(-1.8134302).epsilon(1e-7));

  CHECK(tmsv_energy(0.0) == 0.0);
  CHECK(tmsv_energy(1.0) == doctest::Approx(2.7621957).epsilon(1e-7));
  for (double e : {1e-6, 0.1, 1.0, 10.0, 1e4}) {
    CHECK(std::abs(tmsv_energy(tmsv_squeezing_for_energy(e)) - e) < 1e-12 * std::max(1.0, e));
  }
  CHECK_THROWS_AS(tmsv_covariance(-0.1), DomainError);
}

TEST_CASE("symplectic eigenvalues") {
  SUBCASE("vacuum and thermal") {
    for (double nu : symplectic_eigenvalues(CovarianceMatrix::vacuum(3))) {
      CHECK(nu == doctest::Approx(0.5));
    }
    for (double nu : symplectic_eigenvalues(CovarianceMatrix::thermal(1, 1.7))) {
      CHECK(nu == doctest::Approx(1.7));
    }
  }
  SUBCASE("TMSV is pure") {
    for (double r : {0.0, 0.5, 1.0, 3.0}) {
      for (double nu : symplectic_eigenvalues(tmsv_covariance(r))) {
        CHECK(nu == doctest::Approx(0.5).epsilon(1e-9));
      }
    }
  }
  SUBCASE("TMSV(1) partial transpose") {
    const auto nu = symplectic_eigenvalues(partial_transpose(tmsv_covariance(1.0), 1));
    CHECK(nu[0] == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(nu[1] == doctest::Approx(0.5 * std::exp(2.0)).epsilon(1e-12));
  }
  SUBCASE("Hermitian route agrees with the general Delta V spectrum") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      const auto v = random_physical(rng);
      for (int mode : {-1, 1}) {
        const auto w = mode < 0 ? v : partial_transpose(v, mode);
        const auto a = symplectic_eigenvalues(w);
        const auto b = symplectic_eigenvalues_general(w);
        for (std::size_t k = 0; k < a.size(); ++k) {
          CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-8));
        }
      }
    }
  }
  SUBCASE("invariant under symplectic congruence") {
    // nu(S V S^T) = nu(V) for a local squeezer S.
    Eigen::Matrix4d s = Eigen::Vector4d(2.0, 0.5, 1.0, 1.0).asDiagonal();
    const auto v = CovarianceMatrix::thermal(2, 1.3);
    const auto nu = symplectic_eigenvalues(CovarianceMatrix(s * v.entries() * s.transpose()));
    CHECK(nu[0] == doctest::Approx(1.3));
    CHECK(nu[1] == doctest::Approx(1.3));
  }
}

TEST_CASE("Simon criterion") {
  CHECK(simon_separable(CovarianceMatrix::vacuum(2)));
  CHECK_FALSE(simon_separable(tmsv_covariance(1.0)));
  CHECK(min_pt_symplectic_eigenvalue(tmsv_covariance(1.0)) ==
        doctest::Approx(0.0676676).epsilon(1e-6));
  for (double kappa : {0.05, 0.2, 1.0, 2.0, 5.0, 20.0}) {
    const auto p = make_channel(kappa, std::max(0.5, quantum_limited_noise(kappa)));
    CHECK(simon_separable(apply_channel(tmsv_covariance(4.0), {p, p})));
  }
  CHECK_THROWS_AS(simon_separable(CovarianceMatrix::vacuum(3)), DimensionMismatch);
}

TEST_CASE("apply_channel keeps states physical") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> kd(0.05, 5.0);
  std::uniform_real_distribution<double> ad(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const auto v = random_physical(rng);
    REQUIRE(is_physical(v));
    const auto p1 = make_channel_extra(kd(rng), i % 3 == 0 ? 0.0 : ad(rng));
    const auto p2 = make_channel_extra(kd(rng), i % 5 == 0 ? 0.0 : ad(rng));
    CHECK(is_physical(apply_channel(v, {p1, p2})));
  }
}

TEST_CASE("Simon separability is monotone in the noise") {
  for (double kappa : {0.3, 1.0, 1.7}) {
    for (double r : {0.2, 1.0, 4.0}) {
      bool separable = false;
      for (double mu = quantum_limited_noise(kappa); mu < 1.5; mu += 0.01) {
        const auto p = make_channel(kappa, mu);
        const bool now = simon_separable(apply_channel(tmsv_covariance(r), {p, p}));
        if (separable) CHECK(now);
        separable = separable || now;
      }
      CHECK(separable);
    }
  }
}
