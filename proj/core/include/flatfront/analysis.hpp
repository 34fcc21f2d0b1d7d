#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flatfront/config.hpp"
#include "flatfront/contour.hpp"
#include "flatfront/meromorphic.hpp"
#include "flatfront/weierstrass.hpp"

namespace flatfront {

/// Fundamental forms at a chart point w = x + iy. Quadratic forms are stored
/// as (a, b, c) for a dx^2 + 2b dx dy + c dy^2.
struct FormsAtPoint {
  std::array<double, 3> first{};
  std::array<double, 3> second{};
  double lambda = 0.0;  // (1 + |rho|^2) |h|^2, the (1,1)-part conformal factor
  double abs_rho = 0.0;
  bool singular = false;

  double det_first() const { return first[0] * first[2] - first[1] * first[1]; }
  double det_second() const { return second[0] * second[2] - second[1] * second[1]; }
};

/// I = |omega + conj(theta)|^2 with the Hopf part taken as rho h^2, and
/// II = |theta|^2 - |omega|^2. Error(kPoleAtPoint) at poles of h or t.
FormsAtPoint forms_at(const WeierstrassData& d, Complex w, const Tolerances& tol = {});

/// |det I - det II| / det II, and the same against (|h|^2 - |t|^2)^2.
struct DetDefect {
  double first_vs_second = 0.0;
  double first_vs_closed = 0.0;
};
DetDefect det_defect(const WeierstrassData& d, Complex w);

/// Sampling rectangle in either the base coordinate (kPlane) or the log
/// chart (kLog, z = e^w).
struct ChartGrid {
  ChartKind chart = ChartKind::kPlane;
  Rect rect;
  int nu = 256;
  int nv = 256;
};

/// Level set |rho| = 1 by marching squares; polylines in grid coordinates.
std::vector<Polyline> singular_set(const WeierstrassData& d, const ChartGrid& grid);

/// Mean |z| over the vertices of a set of polylines given in the base plane.
double mean_radius(const std::vector<Polyline>& curves);

/// Curve in chart coordinates; the parameter is u.
struct ChartCurve {
  std::function<Complex(double)> point;
  std::function<Complex(double)> velocity;
};

/// Cumulative integral of sqrt(1 + |rho|^2) |h| |dw| from u0 to each cutoff
/// (cutoffs increasing). Error(kQuadratureFailure) when an adaptive
/// Gauss-Kronrod panel does not reach its tolerance.
std::vector<double> ds11_length(const WeierstrassData& d, const ChartCurve& curve, double u0,
                                std::span<const double> cutoffs);

/// Ray into an end, parametrized by u = log R where R grows towards the end:
/// |w| = R at infinity, distance 1/R from a finite end, |log z| = R on the
/// log chart. r0 is the first admissible R.
struct EndRay {
  ChartCurve curve;
  double r0 = 1.0;
  double angle = 0.0;
};
EndRay end_ray(const WeierstrassData& d, const SpherePoint& end);

enum class ProbeType { kAnalyticOrder, kNumericQuadrature };
enum class EndVerdict { kCompleteCertified, kIncompleteCertified, kInconclusive };

std::string to_string(ProbeType p);
std::string to_string(EndVerdict v);

/// Two-model fit of partial lengths over the last decade of cutoffs.
struct GrowthFit {
  double log_slope = 0.0;  // L ~ a + b log R
  double log_t = 0.0;
  double inv_slope = 0.0;  // L ~ a + b / R
  double inv_t = 0.0;
  double last_increment = 0.0;  // over the final decade
  double increment_ratio = 0.0; // final decade increment / previous one
  bool cauchy = false;
  double limit = 0.0;  // extrapolated length when convergent
};

struct EndReport {
  SpherePoint end;
  ProbeType probe = ProbeType::kAnalyticOrder;
  double order = 0.0;
  std::vector<double> radii;
  std::vector<double> lengths;
  std::optional<GrowthFit> fit;
  EndVerdict verdict = EndVerdict::kInconclusive;
};

struct CompletenessVerdict {
  std::vector<EndReport> ends;
  bool all_complete() const;
};

struct ProbeOptions {
  int decades = 7;
  int points_per_decade = 4;
};

/// Classifies partial lengths L(R_k) sampled at R0 10^(k / points_per_decade).
GrowthFit fit_growth(std::span<const double> radii, std::span<const double> lengths,
                     int points_per_decade, double cauchy_tol);

/// Length probe along end_ray, classified by fit_growth.
EndReport numeric_end_probe(const WeierstrassData& d, const SpherePoint& end,
                            const ProbeOptions& opts = {}, const Tolerances& tol = {});

/// Per end: order < -1 certifies completeness analytically; order >= -1 is
/// decided (order == -1) or backed by a convergent length bound (order > -1)
/// with a numeric probe.
CompletenessVerdict completeness_probe(const WeierstrassData& d, const ProbeOptions& opts = {},
                                       const Tolerances& tol = {});

/// Intrinsic Gaussian curvature of I at w (Brioschi formula, fourth-order
/// central differences on a 5x5 stencil). Error(kSingularSample) when the
/// stencil touches a pole or the singular set.
double gaussian_curvature(const WeierstrassData& d, Complex w, double fd_step);

/// max |K| over samples. Samples with ||rho| - 1| < margin raise
/// Error(kSingularSample).
double flatness_check(const WeierstrassData& d, std::span<const Complex> samples, double fd_step,
                      double margin = 1e-2);

/// Deterministic pseudo-random chart points with ||rho| - 1| >= margin and
/// at least clearance away from poles and ends.
std::vector<Complex> regular_samples(const WeierstrassData& d, int count, unsigned seed,
                                     double margin = 5e-2, double clearance = 0.2);

enum class Classification { kHorosphereOrCylinder, kNontrivial, kViolatesTheorem };
std::string to_string(Classification c);

struct ClassificationVerdict {
  bool is_rho_constant = false;
  RamificationProfile profile;
  double gamma = 0.0;
  bool gate_passed = false;
  Classification verdict = Classification::kNontrivial;
  /// "horosphere" or "hyperbolic-cylinder" when revolution data allow it.
  std::string refinement;
};

/// Critical values of rho in the domain, then values rho takes at the ends
/// that are omitted on the domain.
std::vector<SpherePoint> auto_targets(const WeierstrassData& d, const Tolerances& tol = {});

/// Error(kNotWeaklyComplete) unless every end of the verdict is
/// complete-certified.
ClassificationVerdict classify(const WeierstrassData& d, const CompletenessVerdict& completeness,
                               std::optional<std::vector<SpherePoint>> targets = std::nullopt,
                               const Tolerances& tol = {});
ClassificationVerdict classify(const WeierstrassData& d,
                               std::optional<std::vector<SpherePoint>> targets = std::nullopt,
                               const Tolerances& tol = {});

}  // namespace flatfront
