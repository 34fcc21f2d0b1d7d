#include "flatfront/h3_model.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "flatfront/error.hpp"

namespace flatfront {

namespace {

Mat2 adjugate(const Mat2& Y) {
  Mat2 adj;
  adj << Y(1, 1), -Y(0, 1), -Y(1, 0), Y(0, 0);
  return adj;
}

// Coordinates of the Hermitian part of X; no symmetry check.
MinkowskiVec coords_of(const Mat2& X) {
  const Complex off = 0.5 * (X(0, 1) + std::conj(X(1, 0)));
  const double a = X(0, 0).real();
  const double d = X(1, 1).real();
  return {0.5 * (a + d), off.real(), off.imag(), 0.5 * (a - d)};
}

}  // namespace

Mat2 herm_from_minkowski(const MinkowskiVec& v) {
  Mat2 X;
  X << Complex(v.x0 + v.x3, 0.0), Complex(v.x1, v.x2),
       Complex(v.x1, -v.x2), Complex(v.x0 - v.x3, 0.0);
  return X;
}

MinkowskiVec minkowski_from_herm(const Mat2& X, double tol) {
  const double asym = std::max({std::abs(X(0, 0).imag()), std::abs(X(1, 1).imag()),
                                std::abs(X(0, 1) - std::conj(X(1, 0)))});
  if (asym > tol) {
    throw Error(ErrorCode::kNonHermitian,
                "matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  }
  return coords_of(X);
}

double lorentz_inner(const MinkowskiVec& x, const MinkowskiVec& y) {
  return -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3;
}

double lorentz_inner(const Mat2& X, const Mat2& Y) {
  return -0.5 * (X * adjugate(Y)).trace().real();
}

bool in_h3(const MinkowskiVec& v, double tol) {
  const double det = v.x0 * v.x0 - v.x1 * v.x1 - v.x2 * v.x2 - v.x3 * v.x3;
  return std::abs(det - 1.0) <= tol && v.x0 > 0.0;
}

bool in_h3(const Mat2& X, double tol) {
  const double det = X.determinant().real();
  return std::abs(det - 1.0) <= tol && X.trace().real() > 0.0;
}

HPoint::HPoint(const MinkowskiVec& v, double tol) : v_(v) {
  if (!in_h3(v, tol)) {
    throw Error(ErrorCode::kNotInH3, "point is not on the hyperboloid sheet");
  }
}

Isometry::Isometry(const Mat2& a, double tol) : a_(a) {
  if (std::abs(a.determinant() - Complex(1.0, 0.0)) > tol) {
    throw Error(ErrorCode::kNotUnimodular, "isometry representative needs det = 1");
  }
}

MinkowskiVec act(const Isometry& a, const MinkowskiVec& x) {
  const Mat2& m = a.matrix();
  return coords_of(m * herm_from_minkowski(x) * m.adjoint());
}

HPoint act(const Isometry& a, const HPoint& x) {
  // The image is in H^3 up to rounding; accept it with a scale-aware bound.
  const MinkowskiVec y = act(a, x.coords());
  return HPoint(y, 1e-12 * std::max(1.0, y.x0 * y.x0) + Tolerances{}.det);
}

std::array<double, 3> ball_project(const HPoint& x) {
  const MinkowskiVec& v = x.coords();
  const double s = 1.0 / (1.0 + v.x0);
  return {v.x1 * s, v.x2 * s, v.x3 * s};
}

}  // namespace flatfront
