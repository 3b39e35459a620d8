#include "cvea/phase_diagram.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>

#include "cvea/boundaries.hpp"
#include "cvea/channel.hpp"
#include "cvea/covariance.hpp"
#include "cvea/errors.hpp"
#include "cvea/witness.hpp"

namespace cvea {

namespace {

struct KindName {
  CurveKind kind;
  const char* name;
};

constexpr std::array<KindName, 9> kKindNames{{
    {CurveKind::prop1_gaussian, "prop1_gaussian"},
    {CurveKind::tmsv_energy, "tmsv_energy"},
    {CurveKind::corollary3, "corollary3"},
    {CurveKind::prop2_region_slice, "prop2_region_slice"},
    {CurveKind::corollary4, "corollary4"},
    {CurveKind::eb_threshold, "eb_threshold"},
    {CurveKind::validity, "validity"},
    {CurveKind::asymptote_small_kappa, "asymptote_small_kappa"},
    {CurveKind::asymptote_large_kappa, "asymptote_large_kappa"},
}};

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string pair_label(double kappa1, double kappa2) {
  return "kappa1=" + short_number(kappa1) + ";kappa2=" + short_number(kappa2);
}

// Evaluates f on every abscissa in parallel; the nullopt results are dropped
// and the rest are kept in abscissa order.
template <typename F>
std::vector<std::pair<double, double>> sample(const std::vector<double>& xs, F f) {
  std::vector<std::optional<double>> ys(xs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (ys[i]) out.emplace_back(xs[i], *ys[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BoundaryCurve make_curve(CurveKind kind, std::string label, CurveMethod method, double tol,
                         std::vector<std::pair<double, double>> samples) {
  return BoundaryCurve{kind, std::move(label), method, tol, std::move(samples)};
}

std::vector<BoundaryCurve> kappa_plane_context(const std::vector<double>& kappa_grid) {
  std::vector<BoundaryCurve> curves;
  curves.push_back(make_curve(CurveKind::validity, "", CurveMethod::analytic, 0.0,
                              sample(kappa_grid, [](double k) -> std::optional<double> {
                                return quantum_limited_noise(k);
                              })));
  curves.push_back(make_curve(CurveKind::eb_threshold, "", CurveMethod::analytic, 0.0,
                              sample(kappa_grid, [](double k) -> std::optional<double> {
                                return quantum_limited_noise(k) + std::min(k, 1.0);
                              })));
  return curves;
}

}  // namespace

const char* to_string(CurveKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "unknown";
}

const char* to_string(CurveMethod method) {
  return method == CurveMethod::analytic ? "analytic" : "bisection";
}

CurveKind curve_kind_from_string(const std::string& s) {
  for (const auto& kn : kKindNames) {
    if (s == kn.name) return kn.kind;
  }
  throw DomainError("unknown curve kind '" + s + "'");
}

CurveMethod curve_method_from_string(const std::string& s) {
  if (s == "analytic") return CurveMethod::analytic;
  if (s == "bisection") return CurveMethod::bisection;
  throw DomainError("unknown curve method '" + s + "'");
}

std::string BoundaryCurve::name() const {
  std::string n = to_string(kind);
  if (!label.empty()) n += "(" + label + ")";
  return n;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw DomainError("bad log grid");
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(i * step);
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw DomainError("bad linear grid");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

std::vector<BoundaryCurve> curve_fig1b(const std::vector<double>& energies,
                                       const std::vector<double>& kappa_grid,
                                       double bisection_tol) {
  std::vector<BoundaryCurve> curves;
  for (double e : energies) {
    if (!(e > 0.0)) throw DomainError("energies must be positive");
    const std::string label = "E=" + short_number(e);
    curves.push_back(make_curve(
        CurveKind::tmsv_energy, label, CurveMethod::analytic, 0.0,
        sample(kappa_grid, [e](double k) -> std::optional<double> {
          const double mu = tmsv_survival_max_noise(k, e);
          if (mu < quantum_limited_noise(k)) return std::nullopt;
          return mu;
        })));
    const double r = tmsv_squeezing_for_energy(e);
    curves.push_back(make_curve(
        CurveKind::tmsv_energy, label, CurveMethod::bisection, bisection_tol,
        sample(kappa_grid, [&](double k) -> std::optional<double> {
          const double mu_ql = quantum_limited_noise(k);
          const std::array<double, 2> ks{k, k};
          const std::array<double, 2> ms{mu_ql, mu_ql};
          if (simon_separable(scale_and_add_noise(tmsv_covariance(r), ks, ms))) {
            return std::nullopt;
          }
          return simon_critical_noise_symmetric(r, k, mu_ql, {bisection_tol, 40, 20});
        })));
  }
  curves.push_back(make_curve(CurveKind::prop1_gaussian, "", CurveMethod::analytic, 0.0,
                              sample(kappa_grid, [](double k) -> std::optional<double> {
                                if (0.5 < quantum_limited_noise(k)) return std::nullopt;
                                return 0.5;
                              })));
  for (auto& c : kappa_plane_context(kappa_grid)) curves.push_back(std::move(c));
  return curves;
}

std::vector<BoundaryCurve> curve_fig2b(double kappa1, double kappa2,
                                       const std::vector<double>& a1_grid, double r,
                                       double bisection_tol) {
  if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw InvalidChannel("kappas must be positive");
  const double ql1 = quantum_limited_noise(kappa1);
  const double ql2 = quantum_limited_noise(kappa2);
  const std::string label = pair_label(kappa1, kappa2);
  std::vector<BoundaryCurve> curves;
  curves.push_back(make_curve(
      CurveKind::corollary3, label, CurveMethod::analytic, 0.0,
      sample(a1_grid, [&](double a1) -> std::optional<double> {
        if (a1 < 0.0) return std::nullopt;
        const double a2 = corollary3_critical_noise(kappa1, ql1 + a1, kappa2) - ql2;
        if (!(a2 > 0.0)) return std::nullopt;
        return a2;
      })));
  curves.push_back(make_curve(
      CurveKind::corollary3, label, CurveMethod::bisection, bisection_tol,
      sample(a1_grid, [&](double a1) -> std::optional<double> {
        if (a1 < 0.0) return std::nullopt;
        const std::array<double, 2> ks{kappa1, kappa2};
        const std::array<double, 2> ms{ql1 + a1, ql2};
        if (simon_separable(scale_and_add_noise(tmsv_covariance(r), ks, ms))) {
          return std::nullopt;
        }
        return simon_critical_noise_second(r, kappa1, ql1 + a1, kappa2, ql2,
                                           {bisection_tol, 40, 20}) -
               ql2;
      })));
  return curves;
}

std::vector<BoundaryCurve> curve_fig3a(double kappa1, double kappa2,
                                       const std::vector<double>& a1_grid, double gamma,
                                       double bisection_tol) {
  if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) throw InvalidChannel("kappas must be positive");
  const std::string label = pair_label(kappa1, kappa2);
  std::vector<BoundaryCurve> curves;
  curves.push_back(make_curve(
      CurveKind::prop2_region_slice, label, CurveMethod::analytic, 0.0,
      sample(a1_grid, [&](double a1) -> std::optional<double> {
        if (a1 < 0.0) return std::nullopt;
        const auto p1 = make_channel_extra(kappa1, a1);
        auto outside = [&](double a2) {
          return !prop2_region(p1, make_channel_extra(kappa2, std::max(a2, 0.0)));
        };
        if (outside(0.0)) return std::nullopt;
        return bisect_switch(outside, 0.0, 2.0, {1e-12, 200, 20});
      })));
  curves.push_back(make_curve(
      CurveKind::prop2_region_slice, label, CurveMethod::bisection, bisection_tol,
      sample(a1_grid, [&](double a1) -> std::optional<double> {
        if (a1 < 0.0) return std::nullopt;
        const auto p1 = make_channel_extra(kappa1, a1);
        if (!detect_entanglement(p1, make_channel_extra(kappa2, 0.0), gamma).detected) {
          return std::nullopt;
        }
        return witness_critical_extra_noise_second(kappa1, a1, kappa2, gamma, bisection_tol);
      })));
  return curves;
}

std::vector<BoundaryCurve> curve_fig3b(const std::vector<double>& kappa_grid, double gamma,
                                       double bisection_tol) {
  std::vector<BoundaryCurve> curves;
  curves.push_back(make_curve(CurveKind::corollary4, "", CurveMethod::analytic, 0.0,
                              sample(kappa_grid, [](double k) -> std::optional<double> {
                                return corollary4_threshold(k);
                              })));
  curves.push_back(make_curve(CurveKind::corollary4, "", CurveMethod::bisection, bisection_tol,
                              sample(kappa_grid, [&](double k) -> std::optional<double> {
                                return witness_critical_noise_symmetric(k, gamma, bisection_tol);
                              })));
  curves.push_back(make_curve(CurveKind::asymptote_small_kappa, "", CurveMethod::analytic, 0.0,
                              sample(kappa_grid, [](double k) -> std::optional<double> {
                                if (0.5 < quantum_limited_noise(k)) return std::nullopt;
                                return 0.5;
                              })));
  curves.push_back(make_curve(CurveKind::asymptote_large_kappa, "", CurveMethod::analytic, 0.0,
                              sample(kappa_grid, [](double k) -> std::optional<double> {
                                return 0.5 * k;
                              })));
  curves.push_back(make_curve(CurveKind::prop1_gaussian, "", CurveMethod::analytic, 0.0,
                              sample(kappa_grid, [](double k) -> std::optional<double> {
                                if (0.5 < quantum_limited_noise(k)) return std::nullopt;
                                return 0.5;
                              })));
  for (auto& c : kappa_plane_context(kappa_grid)) curves.push_back(std::move(c));
  return curves;
}

}  // namespace cvea
