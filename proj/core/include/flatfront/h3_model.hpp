#pragma once

#include <array>

#include "flatfront/complex.hpp"
#include "flatfront/config.hpp"

// Hyperboloid model of hyperbolic 3-space inside Lorentz-Minkowski 4-space,
// identified with 2x2 Hermitian matrices:
//
//   (x0, x1, x2, x3) <-> [[x0 + x3, x1 + i x2], [x1 - i x2, x0 - x3]]
//
// with <X, Y> = -1/2 tr(X adj(Y)), so <X, X> = -det X and H^3 = {det X = 1,
// tr X > 0}. SL(2,C) acts isometrically by X -> a X a^*.

namespace flatfront {

/// Lorentzian coordinates; also the canonical storage of a Hermitian matrix.
struct MinkowskiVec {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  friend MinkowskiVec operator+(const MinkowskiVec& a, const MinkowskiVec& b) {
    return {a.x0 + b.x0, a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
  }
  friend MinkowskiVec operator*(double s, const MinkowskiVec& v) {
    return {s * v.x0, s * v.x1, s * v.x2, s * v.x3};
  }
};

Mat2 herm_from_minkowski(const MinkowskiVec& v);

/// Throws Error(kNonHermitian) if X deviates from X^* by more than tol.
MinkowskiVec minkowski_from_herm(const Mat2& X, double tol = Tolerances{}.herm);

/// -x0 y0 + x1 y1 + x2 y2 + x3 y3.
double lorentz_inner(const MinkowskiVec& x, const MinkowskiVec& y);
/// -1/2 tr(X adj Y); agrees with the coordinate form on Hermitian input.
double lorentz_inner(const Mat2& X, const Mat2& Y);

bool in_h3(const MinkowskiVec& v, double tol = Tolerances{}.det);
bool in_h3(const Mat2& X, double tol = Tolerances{}.det);

/// A validated point of H^3.
class HPoint {
 public:
  /// Throws Error(kNotInH3) unless in_h3(v, tol).
  explicit HPoint(const MinkowskiVec& v, double tol = Tolerances{}.det);

  static HPoint origin() { return HPoint(MinkowskiVec{1.0, 0.0, 0.0, 0.0}); }

  const MinkowskiVec& coords() const { return v_; }
  Mat2 matrix() const { return herm_from_minkowski(v_); }

 private:
  MinkowskiVec v_;
};

/// SL(2,C) representative of an isometry; the sign of a is irrelevant
/// because a X a^* is invariant under a -> -a.
class Isometry {
 public:
  /// Throws Error(kNotUnimodular) if |det a - 1| > tol.
  explicit Isometry(const Mat2& a, double tol = Tolerances{}.det);

  static Isometry identity() { return Isometry(Mat2::Identity()); }

  const Mat2& matrix() const { return a_; }

 private:
  Mat2 a_;
};

/// a X a^* for an arbitrary Hermitian X (points, normals, null vectors).
MinkowskiVec act(const Isometry& a, const MinkowskiVec& x);
HPoint act(const Isometry& a, const HPoint& x);

/// Poincare ball chart: (x1, x2, x3) / (1 + x0). Lands in the open unit ball.
std::array<double, 3> ball_project(const HPoint& x);

}  // namespace flatfront
