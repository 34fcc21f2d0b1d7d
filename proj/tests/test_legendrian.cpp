#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "flatfront/error.hpp"
#include "flatfront/legendrian.hpp"

using namespace flatfront;

namespace {

const SpherePoint kInf = SpherePoint::infinity();

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kBadParams;
}

double rel(const Mat2& a, const Mat2& b) { return (a - b).norm() / b.norm(); }

std::vector<Complex> arc(Complex center, double r, double a0, double a1, int n) {
  std::vector<Complex> p;
  for (int k = 0; k <= n; ++k) p.push_back(center + std::polar(r, a0 + (a1 - a0) * k / n));
  return p;
}

Mat2 random_sl2(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Mat2 a;
  a << Complex(n(gen), n(gen)), Complex(n(gen), n(gen)), Complex(n(gen), n(gen)),
      Complex(n(gen), n(gen));
  return a / std::sqrt(a.determinant());
}

}  // namespace

TEST_CASE("a path of length zero leaves the frame unchanged") {
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  std::mt19937_64 gen(3);
  const Mat2 E0 = random_sl2(gen);
  const std::vector<Complex> path{Complex(0.2, 0.3)};
  CHECK(rel(lift_along(d, path, E0), E0) < 1e-15);
}

TEST_CASE("closed form lift at the base point") {
  const LiftFrame l = closed_form_lift({0.0, 1.0}, 0.0);
  Mat2 expected;
  expected << 1.0, 0.0, 1.0, 1.0;
  CHECK(rel(l.E, expected) < 1e-15);
  for (double a : {-1.0, 0.0, 1.0 / 3.0, 2.0}) {
    const LiftFrame m = closed_form_lift({a, 1.3}, Complex(0.4, -0.8));
    CHECK(std::abs(m.E.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("closed form lift solves the lift equation") {
  for (double a : {-1.0, 0.0, 1.0 / 3.0, 0.5}) {
    const RevolutionParams p{a, 0.8};
    const WeierstrassData d = revolution_data(p);
    const Complex w(0.3, 0.6);
    const double h = 1e-5;
    const Mat2 dE = (closed_form_lift(p, w + h).E - closed_form_lift(p, w - h).E) / (2.0 * h);
    const Mat2 A = closed_form_lift(p, w).E.inverse() * dE;
    CHECK(std::abs(A(0, 0)) < 1e-8);
    CHECK(std::abs(A(1, 1)) < 1e-8);
    CHECK(std::abs(A(0, 1) - d.theta_at(w)) < 1e-7 * (1.0 + std::abs(d.theta_at(w))));
    CHECK(std::abs(A(1, 0) - d.omega_at(w)) < 1e-7 * (1.0 + std::abs(d.omega_at(w))));
  }
}

TEST_CASE("integrated lift matches the closed form") {
  const RevolutionParams p{1.0 / 3.0, 1.0};
  const WeierstrassData d = revolution_data(p);
  const std::vector<Complex> path{0.0, Complex(0.5, 0.0), Complex(0.5, 1.0)};
  const Mat2 E = lift_along(d, path, closed_form_lift(p, 0.0).E);
  CHECK(rel(E, closed_form_lift(p, Complex(0.5, 1.0)).E) < 1e-9);
}

TEST_CASE("front of the identity frame") {
  const FrontPoint p = front_from_lift(Mat2::Identity());
  CHECK(p.f.coords().x0 == doctest::Approx(1.0));
  CHECK(p.f.coords().x1 == doctest::Approx(0.0));
  CHECK(p.n.x3 == doctest::Approx(1.0));
  CHECK(p.n.x0 == doctest::Approx(0.0));
}

TEST_CASE("front and normal are orthogonal, normal is unit spacelike") {
  std::mt19937_64 gen(11);
  for (int k = 0; k < 200; ++k) {
    const FrontPoint p = front_from_lift(random_sl2(gen));
    const double scale = 1.0 + p.f.coords().x0 * p.f.coords().x0;
    CHECK(std::abs(lorentz_inner(p.f.coords(), p.n)) < 1e-9 * scale);
    CHECK(std::abs(lorentz_inner(p.n, p.n) - 1.0) < 1e-9 * scale);
  }
}

TEST_CASE("parallel fronts") {
  std::mt19937_64 gen(5);
  const FrontPoint p = front_from_lift(random_sl2(gen));
  const FrontPoint same = parallel_front(p, 0.0);
  CHECK(same.f.coords().x2 == doctest::Approx(p.f.coords().x2));
  for (double t : {-1.0, 0.3, 2.0}) {
    const FrontPoint q = parallel_front(p, t);
    const MinkowskiVec expected = std::cosh(t) * p.f.coords() + std::sinh(t) * p.n;
    CHECK(q.f.coords().x1 == doctest::Approx(expected.x1));
    CHECK(q.f.coords().x3 == doctest::Approx(expected.x3));
    CHECK(in_h3(q.f.coords(), 1e-8));
    const FrontPoint back = parallel_front(q, -t);
    CHECK(back.f.coords().x0 == doctest::Approx(p.f.coords().x0));
  }
}

TEST_CASE("homotopic paths give the same frame") {
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  const Complex a(0.0, 0.5), b(2.0, 0.5);
  const std::vector<Complex> straight{a, b};
  const std::vector<Complex> detour{a, Complex(0.0, 2.0), Complex(2.0, 2.0), b};
  CHECK(rel(lift_along(d, straight, Mat2::Identity()),
            lift_along(d, detour, Mat2::Identity())) < 1e-7);
}

TEST_CASE("loops around a pole do not depend on the radius") {
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  const std::vector<Complex> big = arc(1.0, 0.5, 0.0, 2.0 * std::numbers::pi, 96);
  std::vector<Complex> small{Complex(1.5)};
  for (Complex z : arc(1.0, 0.25, 0.0, 2.0 * std::numbers::pi, 96)) small.push_back(z);
  small.push_back(Complex(1.5));
  const Mat2 m1 = lift_along(d, big, Mat2::Identity());
  const Mat2 m2 = lift_along(d, small, Mat2::Identity());
  CHECK(rel(m1, m2) < 1e-7);
  CHECK(std::abs(m1.determinant() - 1.0) < 1e-9);
}

TEST_CASE("monodromy is unimodular and conjugation invariant in trace") {
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  const Mat2 m = monodromy(d, d.base_point(), 1.0);
  CHECK(std::abs(m.determinant() - 1.0) < 1e-9);
  const Mat2 m2 = monodromy(d, Complex(0.0, 1.5), 1.0);
  CHECK(std::abs(m.trace() - m2.trace()) < 1e-7);
}

TEST_CASE("integration errors") {
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  const std::vector<Complex> through{Complex(0.5), Complex(1.5)};
  CHECK(code_of([&] { lift_along(d, through, Mat2::Identity()); }) == ErrorCode::kPoleOnPath);
  const std::vector<Complex> ok{Complex(0.0, 1.0), Complex(0.5, 1.0)};
  CHECK(code_of([&] { lift_along(d, ok, Mat2(2.0 * Mat2::Identity())); }) ==
        ErrorCode::kNotUnimodular);
  CHECK(code_of([] { front_from_lift(Mat2(2.0 * Mat2::Identity())); }) ==
        ErrorCode::kNotUnimodular);
}

TEST_CASE("determinant stays at 1 along long loops") {
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  const std::vector<Complex> loop = arc(1.0, 0.5, 0.0, 20.0 * std::numbers::pi, 960);
  auto drift = [&](bool project) {
    IntegratorOptions opts;
    opts.project = project;
    const Trajectory tr = integrate_lift(d, loop, Mat2::Identity(), opts);
    double m = 0.0;
    for (const LiftFrame& f : tr.frames) m = std::max(m, std::abs(f.E.determinant() - 1.0));
    return m;
  };
  CHECK(drift(true) < 1e-9);
  // The raw integrator drifts only at the level of its local error control.
  CHECK(drift(false) < 1e-8);
}
