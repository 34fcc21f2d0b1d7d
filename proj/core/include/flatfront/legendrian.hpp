#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "flatfront/config.hpp"
#include "flatfront/h3_model.hpp"
#include "flatfront/weierstrass.hpp"

namespace flatfront {

/// Value of the holomorphic Legendrian lift at chart point w.
struct LiftFrame {
  Mat2 E = Mat2::Identity();
  Complex w;
};

/// Projection of a lift: f = E E^*, n = E e3 E^*.
struct FrontPoint {
  HPoint f = HPoint::origin();
  MinkowskiVec n{0.0, 0.0, 0.0, 1.0};
};

struct IntegratorOptions {
  double rtol = Tolerances{}.rtol;
  double atol = Tolerances{}.atol;
  double det_tol = Tolerances{}.lift;
  /// Upper bound on the chart length of one step.
  double max_step = std::numeric_limits<double>::infinity();
  /// Rescale E by 1/sqrt(det E) after every accepted step.
  bool project = true;
  /// Keep every accepted step; otherwise only polyline vertices.
  bool record_steps = true;
  std::size_t max_steps = 2'000'000;
};

struct Trajectory {
  std::vector<LiftFrame> frames;
  std::size_t accepted = 0;
  std::size_t rejected = 0;

  const LiftFrame& back() const { return frames.back(); }
};

/// Integrates dE/dw = E [[0, theta(w)], [omega(w), 0]] along a polyline of
/// chart points with an embedded Dormand-Prince 5(4) pair. Step length is
/// capped at half the distance to the nearest coefficient pole.
/// Errors: kNotUnimodular (E0), kPoleOnPath, kStepUnderflow.
Trajectory integrate_lift(const WeierstrassData& d, std::span<const Complex> path,
                          const Mat2& E0, const IntegratorOptions& opts = {});

/// End frame only.
Mat2 lift_along(const WeierstrassData& d, std::span<const Complex> path, const Mat2& E0,
                const IntegratorOptions& opts = {});

/// Explicit lift of the revolution data at log-chart point w (z = e^w).
LiftFrame closed_form_lift(const RevolutionParams& p, Complex w);

/// Error(kNotUnimodular) when |det E - 1| > tol.
FrontPoint front_from_lift(const Mat2& E, double tol = Tolerances{}.lift);

/// f_t = cosh t f + sinh t n,  n_t = cosh t n + sinh t f.
FrontPoint parallel_front(const FrontPoint& p, double t);

/// Transport of the identity frame once around a finite puncture
/// (counterclockwise), starting and ending at base.
Mat2 monodromy(const WeierstrassData& d, Complex base, Complex puncture,
               const IntegratorOptions& opts = {});

}  // namespace flatfront
