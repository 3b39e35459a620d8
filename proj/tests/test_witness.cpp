#include <doctest.h>

#include <cmath>
#include <random>

#include "cvea/boundaries.hpp"
#include "cvea/errors.hpp"
#include "cvea/fock.hpp"
#include "cvea/kraus.hpp"
#include "cvea/witness.hpp"

using namespace cvea;

namespace {

// int d^2 a / pi exp(lambda |a|^2) |<n|a>|^2 by radial Simpson quadrature.
double radial_integral(double lambda, int n) {
  const int steps = 20000;
  const double rmax = std::sqrt(60.0 / (1.0 - lambda)) + 4.0;
  const double h = rmax / steps;
  double sum = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double r = k * h;
    const double f = r == 0.0 && n == 0 ? 0.0
                                        : 2.0 * r * std::exp((lambda - 1.0) * r * r + 2.0 * n * std::log(r) -
                                                             std::lgamma(n + 1.0));
    sum += f * (k == 0 || k == steps ? 1.0 : (k % 2 ? 4.0 : 2.0));
  }
  return sum * h / 3.0;
}

// Critical a2 of the analytic region at fixed (kappa1, a1), by bisection.
double region_edge(double k1, double a1, double k2) {
  const auto p1 = make_channel_extra(k1, a1);
  BisectionOptions opts;
  opts.tol = 1e-10;
  opts.max_iter = 100;
  return bisect_switch([&](double a2) { return !prop2_region(p1, make_channel_extra(k2, a2)); },
                       0.0, 2.0, opts);
}

}  // namespace

TEST_CASE("lambda0") {
  CHECK(lambda0(1.0, 3.0) == 1.0);
  CHECK(lambda0(4.0, 1.0) == 1.0);
  CHECK(lambda0(2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> td(1.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double l = lambda0(td(rng), td(rng));
    CHECK(l > 0.0);
    CHECK(l <= 1.0);
  }
}

TEST_CASE("witness Fock matrix") {
  const FockCutoff c(5);
  const auto w0 = witness_fock_matrix(0.0, c);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        for (int l = 0; l < 5; ++l) {
          CHECK(w0(i * 5 + j, k * 5 + l) == (i == l && j == k ? 1.0 : 0.0));
        }
      }
    }
  }
  const auto w = witness_fock_matrix(0.5, c);
  CHECK(w(1 * 5 + 0, 0 * 5 + 1) == doctest::Approx(8.0).epsilon(1e-15));
  // Each entry factorizes into two one-mode Gaussian integrals.
  for (double lambda : {-1.0, 0.3, 0.6}) {
    const auto wl = witness_fock_matrix(lambda, c);
    for (int i : {0, 2, 4}) {
      for (int j : {0, 1, 3}) {
        CHECK(wl(i * 5 + j, j * 5 + i) ==
              doctest::Approx(radial_integral(lambda, i) * radial_integral(lambda, j)).epsilon(1e-9));
      }
    }
  }
  CHECK((witness_fock_matrix(0.25, c) - geometric_witness_matrix(1.0 / 0.75, c) / (0.75 * 0.75)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(witness_fock_matrix(1.0, c), DomainError);
}

TEST_CASE("numeric witness averages") {
  const FockCutoff c(10);
  CHECK(witness_average_numeric(FockDensity::from_pure(psi_n_state(1, -1, c)), 0.0) ==
        doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(witness_average_numeric(FockDensity::from_pure(psi_n_state(1, 1, c)), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-15));
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(10);
  vac(0) = 1.0;
  const auto rho = FockDensity::from_pure(product_state(vac, vac));
  for (double lambda : {-3.0, 0.0, 0.5, 0.9}) {
    CHECK(witness_average_numeric(rho, lambda) == doctest::Approx(std::pow(1.0 - lambda, -2.0)).epsilon(1e-14));
  }
  const auto heavy = FockDensity::from_pure(product_state(coherent_state(2.0, c, 1.0), coherent_state(2.0, c, 1.0)));
  CHECK_THROWS_AS(witness_average_numeric(heavy, 0.6), CutoffTooSmall);
}

TEST_CASE("product states never trigger the witness") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> n(0.0, 1.0);
  const FockCutoff c(8);
  for (int i = 0; i < 200; ++i) {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(8);
    for (int k = 0; k < 4; ++k) {
      a(k) = Complex(n(rng), n(rng));
      b(k) = Complex(n(rng), n(rng));
    }
    const auto rho = FockDensity::from_pure(product_state(a / a.norm(), b / b.norm()));
    for (double lambda : {-1.0, 0.0, 0.3, 0.6}) CHECK(witness_average_numeric(rho, lambda, 1.0) >= -1e-12);
  }
}

TEST_CASE("closed form") {
  SUBCASE("identity channels at lambda = 0 give the SWAP average -1") {
    for (double g : {1e-3, 0.5, 2.0}) {
      CHECK(witness_average_closed_form(identity_channel(), identity_channel(), g, 0.0) ==
            doctest::Approx(-1.0).epsilon(1e-9));
    }
  }
  SUBCASE("agrees with the Fock trace") {
    const FockCutoff c(30);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 12; ++i) {
      const Complex g = std::polar(0.05 + 0.45 * u(rng), 6.28 * u(rng));
      const auto p1 = make_channel_extra(0.2 + 1.0 * u(rng), 0.2 * u(rng));
      const auto p2 = make_channel_extra(0.2 + 1.0 * u(rng), 0.2 * u(rng));
      const auto rho = apply_local_channels(FockDensity::from_pure(psi_gamma_state(g, c)),
                                            channel_kraus(p1, c), channel_kraus(p2, c));
      const double top = std::min(0.3, lambda0(p1.tau(), p2.tau()) - 0.3);
      for (double lambda : {-1.0, 0.0, top}) {
        CHECK(witness_average_closed_form(p1, p2, g, lambda) ==
              doctest::Approx(witness_average_numeric(rho, lambda)).epsilon(1e-8));
      }
    }
  }
  SUBCASE("depends on gamma only through |gamma|") {
    const auto p = make_channel_extra(0.7, 0.1);
    CHECK(witness_average_closed_form(p, p, Complex(0.0, 0.3), -0.5) ==
          doctest::Approx(witness_average_closed_form(p, p, 0.3, -0.5)).epsilon(1e-14));
  }
  SUBCASE("domain") {
    const auto amp = make_channel(2.0, 0.5);
    CHECK_THROWS_AS(witness_average_closed_form(amp, amp, 0.1, 0.5), DomainError);
    CHECK_NOTHROW(witness_average_closed_form(amp, amp, 0.1, 0.4999));
    CHECK_THROWS_AS(witness_average_closed_form(amp, amp, 0.0, 0.0), DegenerateState);
  }
}

TEST_CASE("analytic survival region") {
  CHECK(prop2_region(make_channel_extra(1.0, 0.5), make_channel_extra(1.0, 0.5)));
  CHECK(prop2_region(make_channel_extra(0.5, 0.0), make_channel_extra(0.5, 0.0)));
  CHECK(region_edge(1.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(region_edge(5.0, 0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-8));

  SUBCASE("branch form and (eta, tau) form agree") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> kd(0.05, 6.0);
    std::uniform_real_distribution<double> ad(0.0, 2.0);
    for (int i = 0; i < 20000; ++i) {
      const auto p1 = make_channel_extra(i % 7 == 0 ? 1.0 : kd(rng), ad(rng));
      const auto p2 = make_channel_extra(kd(rng), ad(rng));
      CHECK(prop2_region(p1, p2) == prop2_region_eta_tau(p1, p2));
    }
  }
  SUBCASE("symmetric equal channels reduce to mu < sqrt(kappa^2 + 1) / 2") {
    for (double kappa : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double thr = corollary4_threshold(kappa);
      CHECK(prop2_region(make_channel(kappa, thr - 1e-6), make_channel(kappa, thr - 1e-6)));
      CHECK_FALSE(prop2_region(make_channel(kappa, thr + 1e-6), make_channel(kappa, thr + 1e-6)));
    }
  }
  SUBCASE("entanglement-breaking channels lie outside") {
    for (double k1 : {0.3, 1.0, 4.0}) {
      for (double k2 : {0.3, 1.0, 4.0}) {
        const auto eb = make_channel_extra(k2, std::min(k2, 1.0) + 1e-12);
        CHECK_FALSE(prop2_region(make_channel_extra(k1, 0.0), eb));
        CHECK_FALSE(prop2_region(eb, make_channel_extra(k1, 0.0)));
      }
    }
  }
}

TEST_CASE("symmetric non-Gaussian threshold values") {
  CHECK(corollary4_threshold(1.0) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(corollary4_threshold(1e-9) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(corollary4_threshold(0.3) == doctest::Approx(0.5220153).epsilon(1e-7));
  for (double kappa = 0.01; kappa < 50.0; kappa *= 1.1) {
    CHECK(corollary4_threshold(kappa) > 0.5);
    CHECK(corollary4_threshold(kappa) > 0.5 * kappa);
  }
}

TEST_CASE("lambda grid") {
  for (double l0 : {1.0, 0.5, 1e-3}) {
    const auto grid = default_lambda_grid(l0);
    CHECK(grid.size() == 256);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    CHECK(grid.front() == -4.0);
    CHECK(grid.back() < l0);
    CHECK(l0 - grid.back() <= 1.000001e-10);
  }
}

TEST_CASE("detection") {
  const double g = 1e-3;
  CHECK(detect_entanglement(make_channel_extra(1.0, 0.7), make_channel_extra(1.0, 0.7), g).detected);
  CHECK_FALSE(detect_entanglement(make_channel_extra(1.0, 0.72), make_channel_extra(1.0, 0.72), g).detected);

  SUBCASE("fires inside the analytic region, silent for EB channels") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> kd(0.1, 4.0);
    std::uniform_real_distribution<double> ad(0.0, 1.0);
    int inside = 0;
    for (int i = 0; i < 300; ++i) {
      const auto p1 = make_channel_extra(kd(rng), ad(rng));
      const auto p2 = make_channel_extra(kd(rng), ad(rng));
      const bool detected = detect_entanglement(p1, p2, g).detected;
      if (prop2_region(p1, p2)) {
        ++inside;
        CHECK(detected);
      }
      if (is_entanglement_breaking(p1) || is_entanglement_breaking(p2)) CHECK_FALSE(detected);
    }
    CHECK(inside > 20);
  }
  SUBCASE("monotone in the extra noise") {
    for (double k1 : {0.4, 1.0, 2.5}) {
      for (double k2 : {0.6, 1.8}) {
        for (double a2 : {0.0, 0.2, 0.5}) {
          bool previous = true;
          for (double a1 = 0.0; a1 < 1.2; a1 += 0.02) {
            const bool now = detect_entanglement(make_channel_extra(k1, a1), make_channel_extra(k2, a2), g).detected;
            if (!previous) CHECK_FALSE(now);
            previous = now;
          }
        }
      }
    }
  }
}

TEST_CASE("witness bisection matches the analytic region edge") {
  const double g = 1e-3;
  // Includes pairs with |kappa1 - kappa2| > 2.
  const std::vector<std::array<double, 3>> cases = {
      {5.0, 0.0, 5.0}, {0.5, 0.0, 0.5}, {1.0, 0.3, 1.0}, {0.3, 0.1, 1.7},
      {2.0, 0.2, 0.6}, {0.2, 0.0, 4.0}, {5.0, 0.0, 1.5}, {6.0, 0.4, 0.5}};
  for (const auto& [k1, a1, k2] : cases) {
    CAPTURE(k1);
    CAPTURE(a1);
    CAPTURE(k2);
    const double edge = region_edge(k1, a1, k2);
    CHECK(witness_critical_extra_noise_second(k1, a1, k2, g, 1e-7) == doctest::Approx(edge).epsilon(1e-5));
  }
}

TEST_CASE("critical noise does not depend on gamma") {
  for (double kappa : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    for (double g : {1e-3, 1e-2, 0.1, 0.3, 1.0, 2.0, 3.0}) {
      CAPTURE(kappa);
      CAPTURE(g);
      CHECK(witness_critical_noise_symmetric(kappa, g, 1e-8) ==
            doctest::Approx(corollary4_threshold(kappa)).epsilon(1e-5));
    }
  }
}

TEST_CASE("closed form stays finite in sign near lambda0") {
  const auto p = make_channel(1.0, 0.7065);
  const double l0 = lambda0(p.tau(), p.tau());
  for (double g : {1.0, 3.0}) {
    for (double off : {1e-3, 1e-6, 1e-10}) CHECK_FALSE(std::isnan(witness_average_closed_form(p, p, g, l0 - off)));
  }
}
