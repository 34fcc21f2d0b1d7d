#include "flatfront/legendrian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "flatfront/error.hpp"

namespace flatfront {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Coefficient matrix of the segment, already multiplied by dw/ds.
Mat2 coefficient(const WeierstrassData& d, Complex w, Complex dw) {
  const Complex om = d.omega_at(w);
  const Complex th = d.theta_at(w);
  if (!std::isfinite(std::abs(om)) || !std::isfinite(std::abs(th))) {
    throw Error(ErrorCode::kPoleOnPath, "coefficient pole on the integration path");
  }
  Mat2 A;
  A << Complex{}, th * dw, om * dw, Complex{};
  return A;
}

double segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

void check_path_clear(const WeierstrassData& d, const std::vector<Complex>& poles, Complex a,
                      Complex b) {
  for (const Complex& p : poles) {
    double dist;
    if (d.chart == ChartKind::kPlane) {
      dist = segment_distance(p, a, b);
    } else {
      if (p == Complex{}) continue;
      const Complex base = std::log(p);
      const double two_pi = 2.0 * std::numbers::pi;
      const double lo = std::min(a.imag(), b.imag()) - base.imag();
      const double hi = std::max(a.imag(), b.imag()) - base.imag();
      dist = std::numeric_limits<double>::infinity();
      for (double k = std::floor(lo / two_pi) - 1; k <= std::ceil(hi / two_pi) + 1; k += 1.0) {
        dist = std::min(dist, segment_distance(base + Complex(0.0, k * two_pi), a, b));
      }
    }
    if (dist <= 1e-12 * std::max(1.0, std::abs(p))) {
      throw Error(ErrorCode::kPoleOnPath, "integration path passes through a pole");
    }
  }
}

void project_unimodular(Mat2& E) { E /= std::sqrt(E.determinant()); }

double error_norm(const Mat2& err, const Mat2& y0, const Mat2& y1, double atol, double rtol) {
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    const double r = std::abs(err(i)) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / 4.0);
}

void integrate_segment(const WeierstrassData& d, const std::vector<Complex>& poles, Complex w0,
                       Complex w1, Mat2& E, const IntegratorOptions& opts, Trajectory& out) {
  const Complex dw = w1 - w0;
  const double len = std::abs(dw);
  if (len == 0.0) return;
  check_path_clear(d, poles, w0, w1);

  auto step_cap = [&](double s) {
    const double pole = chart_pole_distance(d.chart, poles, w0 + s * dw);
    return std::min({1.0, opts.max_step / len, 0.5 * pole / len});
  };

  double s = 0.0;
  Mat2 M1 = coefficient(d, w0, dw);
  double h = std::min(step_cap(0.0), 0.1 / std::max(1e-12, M1.cwiseAbs().maxCoeff()));
  Mat2 k1 = E * M1;

  while (s < 1.0) {
    if (out.accepted + out.rejected >= opts.max_steps) {
      throw Error(ErrorCode::kStepUnderflow, "step budget exhausted");
    }
    h = std::min({h, 1.0 - s, step_cap(s)});
    if (h * len < 1e-14 * std::max(1.0, std::abs(w0 + s * dw))) {
      throw Error(ErrorCode::kStepUnderflow, "step size underflow near w = " +
                                                 std::to_string((w0 + s * dw).real()) + "," +
                                                 std::to_string((w0 + s * dw).imag()));
    }
    const Mat2 k2 = (E + h * (a21 * k1)) * coefficient(d, w0 + (s + c2 * h) * dw, dw);
    const Mat2 k3 = (E + h * (a31 * k1 + a32 * k2)) * coefficient(d, w0 + (s + c3 * h) * dw, dw);
    const Mat2 k4 =
        (E + h * (a41 * k1 + a42 * k2 + a43 * k3)) * coefficient(d, w0 + (s + c4 * h) * dw, dw);
    const Mat2 k5 = (E + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)) *
                    coefficient(d, w0 + (s + c5 * h) * dw, dw);
    const Mat2 k6 = (E + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)) *
                    coefficient(d, w0 + (s + h) * dw, dw);
    const Mat2 y = E + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Mat2 M7 = coefficient(d, w0 + (s + h) * dw, dw);
    const Mat2 k7 = y * M7;
    const Mat2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, E, y, opts.atol, opts.rtol);

    if (en <= 1.0 && std::isfinite(en)) {
      s = (1.0 - s - h <= 1e-15) ? 1.0 : s + h;
      E = y;
      if (opts.project) project_unimodular(E);
      k1 = E * M7;
      ++out.accepted;
      if (opts.record_steps || s == 1.0) out.frames.push_back({E, w0 + s * dw});
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++out.rejected;
      h *= std::isfinite(en) ? std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9) : 0.1;
    }
  }
}

}  // namespace

Trajectory integrate_lift(const WeierstrassData& d, std::span<const Complex> path,
                          const Mat2& E0, const IntegratorOptions& opts) {
  if (std::abs(E0.determinant() - Complex(1.0)) > opts.det_tol) {
    throw Error(ErrorCode::kNotUnimodular, "initial frame must have det 1");
  }
  Trajectory out;
  if (path.empty()) return out;
  out.frames.push_back({E0, path.front()});
  Mat2 E = E0;
  const std::vector<Complex> poles = d.base_poles();
  for (std::size_t i = 1; i < path.size(); ++i) {
    integrate_segment(d, poles, path[i - 1], path[i], E, opts, out);
  }
  return out;
}

Mat2 lift_along(const WeierstrassData& d, std::span<const Complex> path, const Mat2& E0,
                const IntegratorOptions& opts) {
  IntegratorOptions o = opts;
  o.record_steps = false;
  return integrate_lift(d, path, E0, o).back().E;
}

LiftFrame closed_form_lift(const RevolutionParams& p, Complex w) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.c) || p.alpha == 1.0 || p.c == 0.0) {
    throw Error(ErrorCode::kBadParams, "revolution data need alpha != 1 and c != 0");
  }
  const double a = p.alpha;
  const double k = 1.0 / (1.0 - a);
  const double c = p.c;
  auto zpow = [&](double s) { return std::exp(s * w); };
  LiftFrame F;
  F.w = w;
  F.E << zpow(-a * k) / c, c * a * k * zpow(k),
         zpow(-k) / c, c * k * zpow(a * k);
  return F;
}

FrontPoint front_from_lift(const Mat2& E, double tol) {
  if (std::abs(E.determinant() - Complex(1.0)) > tol) {
    throw Error(ErrorCode::kNotUnimodular, "lift frame must have det 1");
  }
  Mat2 e3 = Mat2::Identity();
  e3(1, 1) = -1.0;
  const Mat2 Es = E.adjoint();
  const MinkowskiVec f = minkowski_from_herm(E * Es, std::numeric_limits<double>::infinity());
  const MinkowskiVec n = minkowski_from_herm(E * e3 * Es, std::numeric_limits<double>::infinity());
  const double scale = std::max(1.0, f.x0 * f.x0);
  return {HPoint(f, tol * scale + 1e-12 * scale), n};
}

FrontPoint parallel_front(const FrontPoint& p, double t) {
  const double ch = std::cosh(t);
  const double sh = std::sinh(t);
  const MinkowskiVec& f = p.f.coords();
  const MinkowskiVec ft = ch * f + sh * p.n;
  const MinkowskiVec nt = ch * p.n + sh * f;
  const double scale = std::max(1.0, ft.x0 * ft.x0);
  return {HPoint(ft, 1e-9 * scale), nt};
}

Mat2 monodromy(const WeierstrassData& d, Complex base, Complex puncture,
               const IntegratorOptions& opts) {
  double clear = std::abs(base - puncture);
  for (const Complex& p : d.base_poles()) {
    if (std::abs(p - puncture) > 1e-12) clear = std::min(clear, std::abs(p - puncture));
  }
  const double r = 0.5 * clear;
  const Complex dir = (base - puncture) / std::abs(base - puncture);
  std::vector<Complex> path = {base};
  constexpr int kVertices = 96;
  for (int i = 0; i <= kVertices; ++i) {
    path.push_back(puncture + r * dir * std::polar(1.0, 2.0 * std::numbers::pi * i / kVertices));
  }
  path.push_back(base);
  return lift_along(d, path, Mat2::Identity(), opts);
}

}  // namespace flatfront
