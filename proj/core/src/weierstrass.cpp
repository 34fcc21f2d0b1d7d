#include "flatfront/weierstrass.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "flatfront/error.hpp"

namespace flatfront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SpherePoint Mobius::apply(const SpherePoint& p) const {
  if (p.is_infinite()) {
    if (c == Complex{}) return SpherePoint::infinity();
    return SpherePoint(a / c);
  }
  const Complex den = c * p.value() + d;
  if (den == Complex{}) return SpherePoint::infinity();
  return SpherePoint((a * p.value() + b) / den);
}

Complex WeierstrassData::omega_at(Complex w) const {
  if (chart == ChartKind::kLog) return h.value_log(w) * std::exp(w);
  return h.value(w);
}

Complex WeierstrassData::theta_at(Complex w) const {
  if (t.is_zero()) return {};
  if (chart == ChartKind::kLog) return t.value_log(w) * std::exp(w);
  return t.value(w);
}

Complex WeierstrassData::rho_at(Complex w) const {
  if (rho.is_zero()) return {};
  if (chart == ChartKind::kLog) return rho.value_log(w);
  return rho.value(w);
}

double WeierstrassData::abs_rho_at(Complex w) const {
  if (rho.is_zero()) return 0.0;
  return rho.abs_at(z_of(w));
}

std::vector<Complex> WeierstrassData::base_poles() const {
  std::vector<Complex> poles;
  auto add = [&](const MeroFn& f) {
    if (f.is_zero()) return;
    for (const Root& r : find_roots(f.den())) {
      if (std::none_of(poles.begin(), poles.end(),
                       [&](Complex p) { return std::abs(p - r.z) < 1e-12; })) {
        poles.push_back(r.z);
      }
    }
    if (f.power() != 0.0 && chart == ChartKind::kPlane &&
        std::none_of(poles.begin(), poles.end(), [](Complex p) { return p == Complex{}; })) {
      poles.push_back(Complex{});  // branch point
    }
  };
  add(h);
  add(t);
  return poles;
}

double WeierstrassData::pole_distance(Complex w) const {
  return chart_pole_distance(chart, base_poles(), w);
}

double chart_pole_distance(ChartKind chart, const std::vector<Complex>& poles, Complex w) {
  double best = kInf;
  for (const Complex& p : poles) {
    if (chart == ChartKind::kPlane) {
      best = std::min(best, std::abs(w - p));
    } else if (p != Complex{}) {
      const Complex base = std::log(p);
      const double two_pi = 2.0 * std::numbers::pi;
      const double k = std::round((w.imag() - base.imag()) / two_pi);
      best = std::min(best, std::abs(w - (base + Complex(0.0, k * two_pi))));
    }
  }
  return best;
}

Complex WeierstrassData::base_point() const {
  if (chart == ChartKind::kLog) return {};
  static constexpr std::array<Complex, 6> kCandidates = {
      Complex(0.5, 0.5), Complex(0.25, 0.75), Complex(-0.5, 0.5),
      Complex(0.5, -0.5), Complex(1.5, 1.5), Complex(0.0, 2.0)};
  std::vector<Complex> avoid = base_poles();
  for (const SpherePoint& e : ends) {
    if (!e.is_infinite()) avoid.push_back(e.value());
  }
  for (const Complex& c : kCandidates) {
    if (std::all_of(avoid.begin(), avoid.end(),
                    [&](Complex p) { return std::abs(c - p) >= 0.25; })) {
      return c;
    }
  }
  return Complex(3.0, 3.0);
}

WeierstrassData custom_data(MeroFn h, MeroFn rho, std::vector<SpherePoint> ends,
                            ChartKind chart) {
  if (h.is_zero()) throw Error(ErrorCode::kBadParams, "omega must not vanish identically");
  WeierstrassData d;
  d.domain = Domain::sphere_minus(ends);
  d.h = h.with_domain(d.domain);
  d.rho = rho.with_domain(d.domain);
  d.t = (d.rho * d.h).with_domain(d.domain);
  d.ends = std::move(ends);
  d.chart = chart;
  d.family = Family::kCustom;
  return d;
}

WeierstrassData revolution_data(const RevolutionParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.c) || p.alpha == 1.0 || p.c == 0.0) {
    throw Error(ErrorCode::kBadParams, "revolution data need alpha != 1 and c != 0");
  }
  const double a = p.alpha;
  const double c2 = p.c * p.c;
  std::vector<SpherePoint> ends = {SpherePoint(Complex{})};
  if (a != 0.0) ends.push_back(SpherePoint::infinity());

  WeierstrassData d;
  d.domain = Domain::sphere_minus(ends);
  d.h = MeroFn::monomial(-1.0 / c2, -2.0 / (1.0 - a), d.domain);
  d.t = MeroFn::monomial(c2 * a / ((1.0 - a) * (1.0 - a)), 2.0 * a / (1.0 - a), d.domain);
  d.rho = (d.t / d.h).with_domain(d.domain);
  d.ends = std::move(ends);
  d.chart = ChartKind::kLog;
  d.family = Family::kRevolution;
  d.revolution = p;
  return d;
}

WeierstrassData voss_data(const std::vector<SpherePoint>& points, bool enforce_limit) {
  if (points.empty()) throw Error(ErrorCode::kBadParams, "need at least one omitted point");
  if (enforce_limit && points.size() > 3) {
    throw Error(ErrorCode::kTooManyPoints,
                "at most 3 omitted values give a weakly complete front");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (chordal(points[i], points[j]) <= 1e-12) {
        throw Error(ErrorCode::kDuplicatePoints, "omitted values must be distinct");
      }
    }
  }

  std::vector<SpherePoint> normalized = points;
  std::optional<Mobius> mobius;
  const bool has_inf = std::any_of(points.begin(), points.end(),
                                   [](const SpherePoint& p) { return p.is_infinite(); });
  if (!has_inf) {
    const Complex last = points.back().value();
    mobius = Mobius{Complex{0.0}, Complex{1.0}, Complex{1.0}, -last};
    for (SpherePoint& p : normalized) p = mobius->apply(p);
  }

  std::vector<Complex> finite;
  for (const SpherePoint& p : normalized) {
    if (!p.is_infinite()) finite.push_back(p.value());
  }
  WeierstrassData d;
  d.domain = Domain::sphere_minus(normalized);
  d.h = MeroFn(Polynomial::constant(1.0), Polynomial::from_roots(finite), 0.0, d.domain);
  d.rho = MeroFn::identity(d.domain);
  d.t = (d.rho * d.h).with_domain(d.domain);
  d.ends = normalized;
  d.chart = ChartKind::kPlane;
  d.family = Family::kVoss;
  d.voss_points = points;
  d.normalization = mobius;
  return d;
}

HopfDifferential hopf(const WeierstrassData& d) {
  return {(d.h * d.t).with_domain(d.domain)};
}

MeroFn ratio(const WeierstrassData& d) {
  return (d.t / d.h).with_domain(d.domain);
}

double end_order(const WeierstrassData& d, const SpherePoint& p) {
  const bool declared = std::any_of(d.ends.begin(), d.ends.end(),
                                    [&](const SpherePoint& e) { return chordal(e, p) <= 1e-12; });
  if (!declared) throw Error(ErrorCode::kNotAnEnd, "point is not a declared end");
  const double jac = p.is_infinite() ? -2.0 : 0.0;
  auto form_order = [&](const MeroFn& f) { return f.is_zero() ? kInf : f.order_at(p) + jac; };
  return std::min(form_order(d.h), form_order(d.t));
}

double consistency_defect(const WeierstrassData& d) {
  static constexpr std::array<Complex, 4> kSamples = {
      Complex(0.31, 0.17), Complex(-0.42, 0.55), Complex(0.73, -0.28), Complex(-0.19, -0.61)};
  const Complex base = d.base_point();
  double worst = 0.0;
  for (const Complex& s : kSamples) {
    const Complex w = base + s;
    const Complex lhs = d.rho_at(w) * d.omega_at(w);
    const Complex rhs = d.theta_at(w);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return worst;
}

}  // namespace flatfront
