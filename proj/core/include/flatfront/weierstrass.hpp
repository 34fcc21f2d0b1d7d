#pragma once

#include <optional>
#include <vector>

#include "flatfront/complex.hpp"
#include "flatfront/meromorphic.hpp"

namespace flatfront {

/// Coordinate in which lifts are integrated and forms evaluated.
///  kPlane: w = z directly.
///  kLog:   z = e^w, the universal cover of C minus {0}; real powers z^s
///          become the single-valued e^(s w).
enum class ChartKind { kPlane, kLog };

enum class Family { kRevolution, kVoss, kCustom };

struct RevolutionParams {
  double alpha = 0.0;  // != 1
  double c = 1.0;      // != 0
};

/// z -> (a z + b) / (c z + d)
struct Mobius {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};
  SpherePoint apply(const SpherePoint& p) const;
};

/// Canonical forms omega = h dz, theta = t dz and their ratio rho = t / h on
/// a punctured sphere. The constructors below keep rho * h == t; the fields
/// are public so analysis code can also inspect deliberately broken data.
struct WeierstrassData {
  MeroFn h;
  MeroFn rho;
  MeroFn t;
  Domain domain;
  std::vector<SpherePoint> ends;
  ChartKind chart = ChartKind::kPlane;
  Family family = Family::kCustom;

  std::optional<RevolutionParams> revolution;
  std::vector<SpherePoint> voss_points;  // as given, before normalization
  std::optional<Mobius> normalization;   // applied to voss_points

  /// Base coordinate z of a chart point.
  Complex z_of(Complex w) const { return chart == ChartKind::kLog ? std::exp(w) : w; }
  /// Coefficients of omega and theta with respect to dw (Jacobian included).
  Complex omega_at(Complex w) const;
  Complex theta_at(Complex w) const;
  Complex rho_at(Complex w) const;
  /// |rho| at a chart point (branch independent).
  double abs_rho_at(Complex w) const;

  /// Canonical base point for lifts: w = 0 on the log chart, otherwise a
  /// fixed point away from the punctures.
  Complex base_point() const;
  /// Finite singularities of h and t in the base coordinate.
  std::vector<Complex> base_poles() const;
  /// Distance from chart point w to the nearest singularity of the
  /// coefficients (all lattice copies on the log chart).
  double pole_distance(Complex w) const;
};

/// pole_distance with precomputed base_poles().
double chart_pole_distance(ChartKind chart, const std::vector<Complex>& poles, Complex w);

/// From omega-coefficient h and ratio rho; t = rho * h.
WeierstrassData custom_data(MeroFn h, MeroFn rho, std::vector<SpherePoint> ends,
                            ChartKind chart = ChartKind::kPlane);

/// Fronts of revolution: h = -(1/c^2) z^(-2/(1-a)), t = (c^2 a/(1-a)^2) z^(2a/(1-a)).
/// Ends {0} when a = 0, else {0, infinity}. Error(kBadParams) for a = 1 or c = 0.
WeierstrassData revolution_data(const RevolutionParams& p);

/// Voss-type data omitting exactly the points of E (at most 3): rho = xi,
/// h = 1 / prod_finite (xi - e_i). If infinity is not in E, the coordinate is
/// first moved by xi = 1/(z - e_last) and the map is recorded.
/// enforce_limit = false builds the q >= 4 datum (not weakly complete).
WeierstrassData voss_data(const std::vector<SpherePoint>& points, bool enforce_limit = true);

/// Q = omega theta = q dz^2.
struct HopfDifferential {
  MeroFn q;
};
HopfDifferential hopf(const WeierstrassData& d);

/// rho = theta / omega in reduced form.
MeroFn ratio(const WeierstrassData& d);

/// min(ord_p omega, ord_p theta) for an end p, with dz = -dw/w^2 at infinity.
/// Error(kNotAnEnd) otherwise.
double end_order(const WeierstrassData& d, const SpherePoint& p);

/// Max relative deviation |rho h - t| over a few sample points.
double consistency_defect(const WeierstrassData& d);

}  // namespace flatfront
