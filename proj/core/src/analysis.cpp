#include "flatfront/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flatfront/error.hpp"

namespace flatfront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::array<double, 3> first_form(const WeierstrassData& d, Complex w) {
  const Complex h = d.omega_at(w);
  const Complex t = d.theta_at(w);
  const Complex rho = d.rho_at(w);
  if (!finite(h) || !finite(t) || !finite(rho)) {
    throw Error(ErrorCode::kPoleAtPoint, "coefficients are singular at the point");
  }
  const Complex q = rho * h * h;
  const double s = std::norm(h) + std::norm(t);
  return {s + 2.0 * q.real(), -2.0 * q.imag(), s - 2.0 * q.real()};
}

// Least squares line y = a + b x; returns slope and its t-statistic.
std::pair<double, double> line_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double b = sxy / sxx;
  const double a = my - b * mx;
  double rss = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - a - b * x[i];
    rss += r * r;
    scale = std::max(scale, std::abs(y[i]));
  }
  // Residuals at rounding level count as an exact fit.
  const double floor = 1e-13 * scale;
  rss = std::max(rss, n * floor * floor);
  const double se = std::sqrt(rss / (n > 2 ? n - 2 : 1) / sxx);
  return {b, se > 0.0 ? b / se : kInf};
}

// p(z + a) through the Taylor coefficients at a.
Polynomial shift(const Polynomial& p, Complex a) {
  std::vector<Complex> c(p.coeffs().size());
  double factorial = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    c[k] = p.derivative_at(a, static_cast<int>(k)) / factorial;
  }
  return Polynomial(std::move(c));
}

MeroFn shift(const MeroFn& f, Complex a) {
  if (f.is_zero()) return f;
  return MeroFn(shift(f.num(), a), shift(f.den(), a), 0.0, Domain::sphere());
}

// The same data in the coordinate z - a, so that points near the end a are
// represented without cancellation.
WeierstrassData translated(const WeierstrassData& d, Complex a) {
  WeierstrassData out = d;
  out.h = shift(d.h, a);
  out.rho = shift(d.rho, a);
  out.t = shift(d.t, a);
  for (SpherePoint& e : out.ends) {
    if (!e.is_infinite()) e = SpherePoint(e.value() - a);
  }
  out.domain = Domain::sphere_minus(out.ends);
  return out;
}

bool near_singular_set(const WeierstrassData& d, Complex w, double margin) {
  return std::abs(d.abs_rho_at(w) - 1.0) < margin;
}

}  // namespace

FormsAtPoint forms_at(const WeierstrassData& d, Complex w, const Tolerances& tol) {
  FormsAtPoint out;
  out.first = first_form(d, w);
  const double h2 = std::norm(d.omega_at(w));
  const double t2 = std::norm(d.theta_at(w));
  out.second = {t2 - h2, 0.0, t2 - h2};
  out.abs_rho = d.abs_rho_at(w);
  out.lambda = (1.0 + out.abs_rho * out.abs_rho) * h2;
  out.singular = std::abs(out.abs_rho - 1.0) <= tol.sing;
  return out;
}

DetDefect det_defect(const WeierstrassData& d, Complex w) {
  const FormsAtPoint f = forms_at(d, w);
  const double h2 = std::norm(d.omega_at(w));
  const double t2 = std::norm(d.theta_at(w));
  const double closed = (h2 - t2) * (h2 - t2);
  const double d1 = f.det_first();
  const double d2 = f.det_second();
  return {std::abs(d1 - d2) / std::abs(d2), std::abs(d1 - closed) / closed};
}

std::vector<Polyline> singular_set(const WeierstrassData& d, const ChartGrid& grid) {
  if (grid.nu < 2 || grid.nv < 2) throw Error(ErrorCode::kBadParams, "grid must be at least 2x2");
  std::vector<double> field(static_cast<std::size_t>(grid.nu) * grid.nv);
  const double dx = (grid.rect.x1 - grid.rect.x0) / (grid.nu - 1);
  const double dy = (grid.rect.y1 - grid.rect.y0) / (grid.nv - 1);
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const Complex p(grid.rect.x0 + i * dx, grid.rect.y0 + j * dy);
      const Complex z = grid.chart == ChartKind::kLog ? std::exp(p) : p;
      const double v = d.rho.is_zero() ? 0.0 : d.rho.abs_at(z);
      field[static_cast<std::size_t>(j) * grid.nu + i] =
          std::isfinite(v) ? v - 1.0 : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return marching_squares(field, grid.nu, grid.nv, grid.rect);
}

double mean_radius(const std::vector<Polyline>& curves) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const Polyline& c : curves) {
    for (const Complex& p : c.points) {
      sum += std::abs(p);
      ++n;
    }
  }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / n;
}

std::vector<double> ds11_length(const WeierstrassData& d, const ChartCurve& curve, double u0,
                                std::span<const double> cutoffs) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double u) {
    const Complex w = curve.point(u);
    const double r = d.abs_rho_at(w);
    return std::sqrt(1.0 + r * r) * std::abs(d.omega_at(w)) * std::abs(curve.velocity(u));
  };
  std::vector<double> out;
  out.reserve(cutoffs.size());
  double total = 0.0;
  double from = u0;
  for (double to : cutoffs) {
    if (to < from) throw Error(ErrorCode::kBadParams, "cutoffs must increase");
    if (to > from) {
      double err = 0.0;
      double l1 = 0.0;
      const double piece =
          gauss_kronrod<double, 31>::integrate(integrand, from, to, 15, 1e-12, &err, &l1);
      if (!std::isfinite(piece) || err > 1e-9 * std::max(1.0, l1)) {
        throw Error(ErrorCode::kQuadratureFailure, "length quadrature did not converge");
      }
      total += piece;
    }
    out.push_back(total);
    from = to;
  }
  return out;
}

EndRay end_ray(const WeierstrassData& d, const SpherePoint& end) {
  EndRay ray;
  if (d.chart == ChartKind::kLog) {
    const double dir = end.is_infinite() ? 1.0 : -1.0;
    if (!end.is_infinite() && end.value() != Complex{}) {
      throw Error(ErrorCode::kUnsupported, "log-chart ends are 0 and infinity");
    }
    ray.curve.point = [dir](double u) { return Complex(dir * u, 0.0); };
    ray.curve.velocity = [dir](double) { return Complex(dir, 0.0); };
    ray.r0 = 1.0;
    return ray;
  }

  std::vector<Complex> others = d.base_poles();
  for (const SpherePoint& e : d.ends) {
    if (!e.is_infinite()) others.push_back(e.value());
  }
  if (!end.is_infinite()) {
    const Complex p = end.value();
    std::erase_if(others, [&](Complex q) { return std::abs(q - p) < 1e-12; });
  }

  // Prefer the real direction; rotate by pi/4 until the ray clears the
  // other punctures by a quarter of its starting radius.
  auto clearance = [&](Complex origin, Complex dir, double from) {
    double best = kInf;
    for (const Complex& q : others) {
      const double s = std::max(from, std::real((q - origin) * std::conj(dir)));
      best = std::min(best, std::abs(origin + s * dir - q));
    }
    return best;
  };

  if (end.is_infinite()) {
    double r0 = 1.0;
    for (const Complex& q : others) r0 = std::max(r0, std::abs(q));
    r0 *= 2.0;
    double angle = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double a = k * std::numbers::pi / 4.0;
      if (clearance({}, std::polar(1.0, a), r0) >= 0.25 * r0) {
        angle = a;
        break;
      }
    }
    const Complex dir = std::polar(1.0, angle);
    ray.curve.point = [dir](double u) { return std::exp(u) * dir; };
    ray.curve.velocity = [dir](double u) { return std::exp(u) * dir; };
    ray.r0 = r0;
    ray.angle = angle;
    return ray;
  }

  const Complex p = end.value();
  double gap = kInf;
  for (const Complex& q : others) gap = std::min(gap, std::abs(q - p));
  const double r0 = std::isfinite(gap) ? std::max(1.0, 2.0 / gap) : 1.0;
  double angle = 0.0;
  double best = -1.0;
  for (int k = 0; k < 8; ++k) {
    const double a = k * std::numbers::pi / 4.0;
    const double c = clearance(p, std::polar(1.0, a), 0.0);
    if (c > best + 1e-12) {
      best = c;
      angle = a;
    }
  }
  const Complex dir = std::polar(1.0, angle);
  ray.curve.point = [p, dir](double u) { return p + std::exp(-u) * dir; };
  ray.curve.velocity = [dir](double u) { return -std::exp(-u) * dir; };
  ray.r0 = r0;
  ray.angle = angle;
  return ray;
}

std::string to_string(ProbeType p) {
  return p == ProbeType::kAnalyticOrder ? "analytic-order" : "numeric-quadrature";
}

std::string to_string(EndVerdict v) {
  switch (v) {
    case EndVerdict::kCompleteCertified: return "complete-certified";
    case EndVerdict::kIncompleteCertified: return "incomplete-certified";
    default: return "inconclusive";
  }
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kHorosphereOrCylinder: return "horosphere-or-cylinder";
    case Classification::kNontrivial: return "nontrivial";
    default: return "violates-theorem";
  }
}

bool CompletenessVerdict::all_complete() const {
  return std::all_of(ends.begin(), ends.end(), [](const EndReport& e) {
    return e.verdict == EndVerdict::kCompleteCertified;
  });
}

GrowthFit fit_growth(std::span<const double> radii, std::span<const double> lengths,
                     int points_per_decade, double cauchy_tol) {
  const std::size_t n = lengths.size();
  const std::size_t k = static_cast<std::size_t>(points_per_decade);
  if (n != radii.size() || n < 2 * k + 1) {
    throw Error(ErrorCode::kBadParams, "need at least two decades of partial lengths");
  }
  GrowthFit fit;
  const std::span<const double> r = radii.subspan(n - k - 1);
  const std::span<const double> l = lengths.subspan(n - k - 1);
  std::vector<double> logs(r.size()), invs(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    logs[i] = std::log(r[i]);
    invs[i] = 1.0 / r[i];
  }
  std::tie(fit.log_slope, fit.log_t) = line_fit(logs, l);
  std::tie(fit.inv_slope, fit.inv_t) = line_fit(invs, l);

  fit.last_increment = lengths[n - 1] - lengths[n - 1 - k];
  const double previous = lengths[n - 1 - k] - lengths[n - 1 - 2 * k];
  fit.increment_ratio = previous > 0.0 ? fit.last_increment / previous : kInf;
  fit.cauchy = fit.last_increment < cauchy_tol;
  const double q = fit.increment_ratio;
  fit.limit = (fit.cauchy && q < 1.0) ? lengths[n - 1] + fit.last_increment * q / (1.0 - q) : kInf;
  return fit;
}

EndReport numeric_end_probe(const WeierstrassData& d, const SpherePoint& end,
                            const ProbeOptions& opts, const Tolerances& tol) {
  EndReport rep;
  rep.end = end;
  rep.probe = ProbeType::kNumericQuadrature;
  rep.order = end_order(d, end);
  const bool local = d.chart == ChartKind::kPlane && !end.is_infinite() &&
                     end.value() != Complex{} && d.h.is_rational() && d.t.is_rational();
  const WeierstrassData moved = local ? translated(d, end.value()) : WeierstrassData{};
  const WeierstrassData& data = local ? moved : d;
  const EndRay ray = end_ray(data, local ? SpherePoint(Complex{}) : end);
  const int count = opts.decades * opts.points_per_decade + 1;
  std::vector<double> cuts;
  for (int i = 0; i < count; ++i) {
    const double r = ray.r0 * std::pow(10.0, static_cast<double>(i) / opts.points_per_decade);
    rep.radii.push_back(r);
    cuts.push_back(std::log(r));
  }
  rep.lengths = ds11_length(data, ray.curve, cuts.front(), cuts);
  const GrowthFit fit = fit_growth(rep.radii, rep.lengths, opts.points_per_decade, tol.cauchy);
  rep.fit = fit;
  if (fit.cauchy && fit.increment_ratio < 0.5 && std::isfinite(fit.limit)) {
    rep.verdict = EndVerdict::kIncompleteCertified;
  } else if (!fit.cauchy && fit.log_slope > 0.0 && std::abs(fit.log_t) >= std::abs(fit.inv_t)) {
    rep.verdict = EndVerdict::kCompleteCertified;
  } else {
    rep.verdict = EndVerdict::kInconclusive;
  }
  return rep;
}

CompletenessVerdict completeness_probe(const WeierstrassData& d, const ProbeOptions& opts,
                                       const Tolerances& tol) {
  CompletenessVerdict out;
  for (const SpherePoint& end : d.ends) {
    const double order = end_order(d, end);
    if (order < -1.0 - 1e-9) {
      EndReport rep;
      rep.end = end;
      rep.probe = ProbeType::kAnalyticOrder;
      rep.order = order;
      rep.verdict = EndVerdict::kCompleteCertified;
      out.ends.push_back(std::move(rep));
      continue;
    }
    EndReport rep = numeric_end_probe(d, end, opts, tol);
    if (order > -1.0 + 1e-9 && rep.verdict != EndVerdict::kIncompleteCertified) {
      // The order says the end has finite length but the probe did not
      // produce a bound.
      rep.verdict = EndVerdict::kInconclusive;
    }
    out.ends.push_back(std::move(rep));
  }
  return out;
}

double gaussian_curvature(const WeierstrassData& d, Complex w, double fd_step) {
  const double h = fd_step;
  std::array<std::array<std::array<double, 3>, 5>, 5> g{};  // g[i][j] at w + (i-2)h + i(j-2)h
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const Complex p = w + Complex((i - 2) * h, (j - 2) * h);
      if (near_singular_set(d, p, 1e-12)) {
        throw Error(ErrorCode::kSingularSample, "stencil touches the singular set");
      }
      try {
        g[i][j] = first_form(d, p);
      } catch (const Error&) {
        throw Error(ErrorCode::kSingularSample, "stencil touches a pole");
      }
    }
  }
  auto du = [&](int c, int j) {
    return (-g[4][j][c] + 8.0 * g[3][j][c] - 8.0 * g[1][j][c] + g[0][j][c]) / (12.0 * h);
  };
  auto dv = [&](int c, int i) {
    return (-g[i][4][c] + 8.0 * g[i][3][c] - 8.0 * g[i][1][c] + g[i][0][c]) / (12.0 * h);
  };
  auto duu = [&](int c) {
    return (-g[4][2][c] + 16.0 * g[3][2][c] - 30.0 * g[2][2][c] + 16.0 * g[1][2][c] -
            g[0][2][c]) /
           (12.0 * h * h);
  };
  auto dvv = [&](int c) {
    return (-g[2][4][c] + 16.0 * g[2][3][c] - 30.0 * g[2][2][c] + 16.0 * g[2][1][c] -
            g[2][0][c]) /
           (12.0 * h * h);
  };
  auto duv = [&](int c) {
    const int idx[4] = {0, 1, 3, 4};
    const double wt[4] = {1.0, -8.0, 8.0, -1.0};
    double s = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) s += wt[a] * wt[b] * g[idx[a]][idx[b]][c];
    }
    return s / (144.0 * h * h);
  };
  const double E = g[2][2][0], F = g[2][2][1], G = g[2][2][2];
  const double Eu = du(0, 2), Ev = dv(0, 2), Fu = du(1, 2), Fv = dv(1, 2), Gu = du(2, 2),
               Gv = dv(2, 2);
  const double Evv = dvv(0), Guu = duu(2), Fuv = duv(1);

  Eigen::Matrix3d m1;
  m1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, E, F, 0.5 * Gv, F, G;
  Eigen::Matrix3d m2;
  m2 << 0.0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, E, F, 0.5 * Gu, F, G;
  const double det = E * G - F * F;
  return (m1.determinant() - m2.determinant()) / (det * det);
}

double flatness_check(const WeierstrassData& d, std::span<const Complex> samples, double fd_step,
                      double margin) {
  double worst = 0.0;
  for (const Complex& w : samples) {
    if (near_singular_set(d, w, margin)) {
      throw Error(ErrorCode::kSingularSample, "sample lies too close to the singular set");
    }
    worst = std::max(worst, std::abs(gaussian_curvature(d, w, fd_step)));
  }
  return worst;
}

std::vector<Complex> regular_samples(const WeierstrassData& d, int count, unsigned seed,
                                     double margin, double clearance) {
  std::mt19937 gen(seed);
  std::vector<Complex> out;
  std::vector<Complex> avoid = d.base_poles();
  for (const SpherePoint& e : d.ends) {
    if (!e.is_infinite()) avoid.push_back(e.value());
  }
  const bool log = d.chart == ChartKind::kLog;
  std::uniform_real_distribution<double> ux(log ? -1.0 : -2.0, log ? 1.0 : 2.0);
  std::uniform_real_distribution<double> uy(log ? -std::numbers::pi : -2.0,
                                            log ? std::numbers::pi : 2.0);
  for (int tries = 0; static_cast<int>(out.size()) < count; ++tries) {
    if (tries > 1000 * count) throw Error(ErrorCode::kBadParams, "no regular sample region");
    const Complex w(ux(gen), uy(gen));
    if (!log && std::any_of(avoid.begin(), avoid.end(),
                            [&](Complex p) { return std::abs(w - p) < clearance; })) {
      continue;
    }
    if (near_singular_set(d, w, margin)) continue;
    out.push_back(w);
  }
  return out;
}

std::vector<SpherePoint> auto_targets(const WeierstrassData& d, const Tolerances& tol) {
  std::vector<SpherePoint> out;
  if (d.rho.is_constant()) return out;
  auto add = [&](const SpherePoint& v) {
    if (std::none_of(out.begin(), out.end(),
                     [&](const SpherePoint& u) { return chordal(u, v) <= 1e-9; })) {
      out.push_back(v);
    }
  };
  for (const SpherePoint& v : critical_values(d.rho, d.domain, tol)) add(v);
  const MeroFn global = d.rho.with_domain(Domain::sphere());
  for (const SpherePoint& e : d.ends) {
    SpherePoint v;
    if (global.is_rational()) {
      v = global.eval(e);
    } else {
      // c z^s: 0 and infinity are the only limits at the ends 0, infinity.
      const bool to_zero = (e.is_infinite() ? -1.0 : 1.0) * global.power() > 0.0;
      v = to_zero ? SpherePoint(Complex{}) : SpherePoint::infinity();
    }
    const bool omitted = global.is_rational()
                             ? alpha_points(d.rho, v, d.domain, tol).empty()
                             : true;
    if (omitted) add(v);
  }
  return out;
}

ClassificationVerdict classify(const WeierstrassData& d, const CompletenessVerdict& completeness,
                               std::optional<std::vector<SpherePoint>> targets,
                               const Tolerances& tol) {
  if (!completeness.all_complete()) {
    throw Error(ErrorCode::kNotWeaklyComplete, "classification needs a weakly complete front");
  }
  ClassificationVerdict out;
  out.is_rho_constant = d.rho.is_constant();
  if (out.is_rho_constant) {
    out.verdict = Classification::kHorosphereOrCylinder;
    if (d.revolution) {
      if (d.revolution->alpha == 0.0) out.refinement = "horosphere";
      if (d.revolution->alpha == -1.0) out.refinement = "hyperbolic-cylinder";
    } else if (d.rho.is_zero()) {
      out.refinement = "horosphere";
    }
    return out;
  }
  out.profile.targets = targets ? std::move(*targets) : auto_targets(d, tol);
  out.profile.floors = ramification_floor(d.rho, out.profile.targets, d.domain, tol);
  validate(out.profile);
  out.gamma = gamma_sum(out.profile);
  out.gate_passed = out.gamma > 3.0;
  out.verdict = out.gate_passed ? Classification::kViolatesTheorem : Classification::kNontrivial;
  return out;
}

ClassificationVerdict classify(const WeierstrassData& d,
                               std::optional<std::vector<SpherePoint>> targets,
                               const Tolerances& tol) {
  return classify(d, completeness_probe(d, {}, tol), std::move(targets), tol);
}

}  // namespace flatfront
