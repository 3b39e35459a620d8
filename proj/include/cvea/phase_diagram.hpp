#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cvea {

enum class CurveKind {
  prop1_gaussian,
  tmsv_energy,
  corollary3,
  prop2_region_slice,
  corollary4,
  eb_threshold,
  validity,
  asymptote_small_kappa,
  asymptote_large_kappa,
};

enum class CurveMethod { analytic, bisection };

const char* to_string(CurveKind kind);
const char* to_string(CurveMethod method);
CurveKind curve_kind_from_string(const std::string& s);
CurveMethod curve_method_from_string(const std::string& s);

struct BoundaryCurve {
  CurveKind kind = CurveKind::validity;
  /// Parameters of the kind, e.g. "E=1" or "kappa1=0.5;kappa2=2".
  std::string label;
  CurveMethod method = CurveMethod::analytic;
  double tolerance = 0.0;
  /// (abscissa, critical value), sorted by abscissa.
  std::vector<std::pair<double, double>> samples;

  /// kind plus label, e.g. "tmsv_energy(E=1)".
  std::string name() const;
};

/// n points log-spaced over [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);

/// Gaussian survival in the (kappa, mu) plane: one tmsv_energy curve per
/// energy (analytic and Simon bisection), the mu = 1/2 line and the validity
/// edge |kappa - 1| / 2. Samples below the validity edge are dropped.
std::vector<BoundaryCurve> curve_fig1b(const std::vector<double>& energies,
                                       const std::vector<double>& kappa_grid,
                                       double bisection_tol = 1e-3);

/// Gaussian (r -> infinity) survival boundary a2(a1) in the (a1, a2) plane for
/// a fixed (kappa1, kappa2), analytic and Simon bisection on TMSV(r).
std::vector<BoundaryCurve> curve_fig2b(double kappa1, double kappa2,
                                       const std::vector<double>& a1_grid, double r = 10.0,
                                       double bisection_tol = 1e-3);

/// Non-Gaussian survival boundary a2(a1) for psi_gamma, analytic region and
/// witness bisection.
std::vector<BoundaryCurve> curve_fig3a(double kappa1, double kappa2,
                                       const std::vector<double>& a1_grid, double gamma = 1e-3,
                                       double bisection_tol = 1e-3);

/// Symmetric non-Gaussian threshold sqrt(kappa^2 + 1) / 2 over the kappa grid,
/// its two asymptotes, the witness bisection cross-check and the validity edge.
std::vector<BoundaryCurve> curve_fig3b(const std::vector<double>& kappa_grid,
                                       double gamma = 1e-3, double bisection_tol = 1e-3);

}  // namespace cvea
