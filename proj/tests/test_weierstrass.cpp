#include <cmath>

#include "doctest.h"
#include "flatfront/error.hpp"
#include "flatfront/weierstrass.hpp"

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

}  // namespace

TEST_CASE("revolution data with alpha = 0 is a horosphere datum") {
  const WeierstrassData d = revolution_data({0.0, 1.0});
  CHECK(d.t.is_zero());
  CHECK(d.rho.is_zero());
  CHECK(d.h.value(2.0) == Complex(-0.25));
  REQUIRE(d.ends.size() == 1);
  CHECK(d.ends[0] == SpherePoint(0.0));
  CHECK(d.chart == ChartKind::kLog);
}

TEST_CASE("revolution ratio is theta over omega") {
  // t/h = -c^4 alpha/(1-alpha)^2 z^(2(1+alpha)/(1-alpha)).
  const WeierstrassData d = revolution_data({1.0 / 3.0, 1.0});
  CHECK(d.rho.is_rational());
  CHECK(d.rho.num().degree() == 4);
  CHECK(d.rho.value(1.0).real() == doctest::Approx(-0.75));
  CHECK(std::abs(d.rho.value(1.0).imag()) < 1e-15);
  const WeierstrassData cyl = revolution_data({-1.0, 2.0});
  CHECK(cyl.rho.is_constant());
  CHECK(cyl.rho.value(3.0).real() == doctest::Approx(4.0));  // c^4 / 4
  CHECK(consistency_defect(d) < 1e-14);
  CHECK(consistency_defect(cyl) < 1e-14);
}

TEST_CASE("revolution parameters are validated") {
  CHECK(code_of([] { revolution_data({1.0, 1.0}); }) == ErrorCode::kBadParams);
  CHECK(code_of([] { revolution_data({0.5, 0.0}); }) == ErrorCode::kBadParams);
}

TEST_CASE("log chart carries the Jacobian") {
  const WeierstrassData d = revolution_data({0.5, 1.0});  // h = -z^-4
  const Complex w(0.3, 0.7);
  const Complex z = std::exp(w);
  CHECK(std::abs(d.omega_at(w) - (-std::pow(z, -4.0) * z)) < 1e-12);
  CHECK(d.abs_rho_at(w) == doctest::Approx(std::abs(d.rho.value(z))));
}

TEST_CASE("voss data") {
  const WeierstrassData two = voss_data({0.0, kInf});
  CHECK(two.h.value(2.0) == Complex(0.5));
  CHECK(two.rho.value(Complex(0.0, 3.0)) == Complex(0.0, 3.0));
  const WeierstrassData one = voss_data({kInf});
  CHECK(one.h.is_constant());
  const WeierstrassData three = voss_data({1.0, -1.0, kInf});
  CHECK(std::abs(three.h.value(2.0) - Complex(1.0 / 3.0)) < 1e-15);
  CHECK_FALSE(three.normalization.has_value());
}

TEST_CASE("voss data without infinity are normalized") {
  const WeierstrassData d = voss_data({1.0, -1.0, 2.0});
  REQUIRE(d.normalization.has_value());
  CHECK(d.normalization->apply(2.0).is_infinite());
  CHECK(d.voss_points.size() == 3);
  bool has_inf = false;
  for (const SpherePoint& e : d.ends) has_inf = has_inf || e.is_infinite();
  CHECK(has_inf);
}

TEST_CASE("voss input validation") {
  CHECK(code_of([] { voss_data({1.0, -1.0, 2.0, kInf}); }) == ErrorCode::kTooManyPoints);
  CHECK(code_of([] { voss_data({1.0, 1.0}); }) == ErrorCode::kDuplicatePoints);
  CHECK(code_of([] { voss_data({}); }) == ErrorCode::kBadParams);
  CHECK_NOTHROW(voss_data({1.0, -1.0, 2.0, kInf}, false));
}

TEST_CASE("hopf differential") {
  const WeierstrassData d = revolution_data({1.0 / 3.0, 1.0});
  const MeroFn q = hopf(d).q;
  // -(alpha/(1-alpha)^2) z^-2
  CHECK(q.value(2.0).real() == doctest::Approx(-0.75 / 4.0));
  const WeierstrassData v = voss_data({1.0, -1.0, kInf});
  const MeroFn qv = hopf(v).q;
  CHECK(std::abs(qv.value(0.0)) < 1e-15);
  CHECK(std::abs(qv.value(2.0) - Complex(2.0 / 9.0)) < 1e-14);
  CHECK(hopf(revolution_data({0.0, 1.0})).q.is_zero());
}

TEST_CASE("ratio reproduces rho") {
  const WeierstrassData v = voss_data({0.0, kInf});
  CHECK(std::abs(ratio(v).value(Complex(0.2, 0.9)) - Complex(0.2, 0.9)) < 1e-14);
}

TEST_CASE("end orders") {
  const WeierstrassData r13 = revolution_data({1.0 / 3.0, 1.0});
  CHECK(end_order(r13, 0.0) == doctest::Approx(-3.0));
  CHECK(end_order(r13, kInf) == doctest::Approx(-3.0));
  CHECK(end_order(revolution_data({0.0, 1.0}), 0.0) == doctest::Approx(-2.0));
  CHECK(end_order(revolution_data({-1.0, 1.0}), kInf) == doctest::Approx(-1.0));
  const WeierstrassData v3 = voss_data({1.0, -1.0, kInf});
  for (const SpherePoint& e : v3.ends) CHECK(end_order(v3, e) == doctest::Approx(-1.0));
  const WeierstrassData v2 = voss_data({0.0, kInf});
  CHECK(end_order(v2, 0.0) == doctest::Approx(-1.0));
  CHECK(end_order(v2, kInf) == doctest::Approx(-2.0));
  CHECK(end_order(voss_data({kInf}), kInf) == doctest::Approx(-3.0));
  const WeierstrassData v4 = voss_data({1.0, -1.0, 2.0, kInf}, false);
  CHECK(end_order(v4, kInf) == doctest::Approx(0.0));
  CHECK(code_of([&] { end_order(v3, 5.0); }) == ErrorCode::kNotAnEnd);
}

TEST_CASE("base point avoids punctures") {
  const WeierstrassData v = voss_data({Complex(0.5, 0.5), kInf});
  const Complex b = v.base_point();
  CHECK(std::abs(b - Complex(0.5, 0.5)) >= 0.25);
  CHECK(revolution_data({2.0, 1.0}).base_point() == Complex{});
}
