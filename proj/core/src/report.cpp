#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "flatfront/error.hpp"
#include "flatfront/json_io.hpp"
#include "flatfront/legendrian.hpp"

namespace flatfront {

using nlohmann::json;

namespace {

json num(double x) {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) return nullptr;
    return x > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

json nums(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(num(x));
  return out;
}

json end_json(const EndReport& e) {
  json out = {{"end", format_sphere_point(e.end)},
              {"probe", to_string(e.probe)},
              {"order", num(e.order)},
              {"verdict", to_string(e.verdict)}};
  if (e.fit) {
    out["radii"] = nums(e.radii);
    out["lengths"] = nums(e.lengths);
    const GrowthFit& f = *e.fit;
    out["fit"] = {{"log_slope", num(f.log_slope)},   {"log_t", num(f.log_t)},
                  {"inv_slope", num(f.inv_slope)},   {"inv_t", num(f.inv_t)},
                  {"last_increment", num(f.last_increment)},
                  {"increment_ratio", num(f.increment_ratio)},
                  {"cauchy", f.cauchy},              {"limit", num(f.limit)}};
  }
  return out;
}

ChartGrid default_contour_grid() {
  ChartGrid g;
  g.chart = ChartKind::kPlane;
  g.rect = {-2.0, 2.0, -2.0, 2.0};
  g.nu = g.nv = 256;
  return g;
}

}  // namespace

nlohmann::json verification_report(const WeierstrassData& d, const ReportOptions& opts,
                                   const Tolerances& tol) {
  json report;
  report["data"] = to_json(d);
  json ends = json::array();
  for (const SpherePoint& e : d.ends) ends.push_back(format_sphere_point(e));
  report["ends"] = ends;

  const CompletenessVerdict comp = completeness_probe(d, {}, tol);
  json cj = json::array();
  for (const EndReport& e : comp.ends) cj.push_back(end_json(e));
  report["completeness"] = cj;

  if (comp.all_complete()) {
    const ClassificationVerdict v = classify(d, comp, std::nullopt, tol);
    json targets = json::array();
    json floors = json::array();
    for (std::size_t k = 0; k < v.profile.targets.size(); ++k) {
      targets.push_back(format_sphere_point(v.profile.targets[k]));
      const int m = v.profile.floors[k];
      floors.push_back(m == kInfiniteMultiplicity ? json("inf") : json(m));
    }
    report["classification"] = {{"is_rho_constant", v.is_rho_constant},
                                {"targets", targets},
                                {"floors", floors},
                                {"gamma", num(v.gamma)},
                                {"gate_passed", v.gate_passed},
                                {"verdict", to_string(v.verdict)},
                                {"refinement", v.refinement}};
  } else {
    report["classification"] = {{"error", std::string(error_name(ErrorCode::kNotWeaklyComplete))}};
  }

  const std::vector<Complex> samples =
      regular_samples(d, opts.flatness_samples, opts.seed);
  json max_k = json::array();
  for (double h : opts.fd_steps) max_k.push_back(num(flatness_check(d, samples, h)));
  report["flatness"] = {{"max_K", max_k}, {"fd_steps", nums(opts.fd_steps)}};

  const ChartGrid grid = opts.grid ? *opts.grid : default_contour_grid();
  json curves = json::array();
  for (const Polyline& pl : singular_set(d, grid)) {
    json c = json::array();
    for (const Complex& p : pl.points) c.push_back({num(p.real()), num(p.imag())});
    curves.push_back(c);
  }
  report["singular_curves"] = curves;

  json mono = json::array();
  if (opts.monodromy && d.chart == ChartKind::kPlane) {
    const Complex base = d.base_point();
    for (const Complex& p : d.base_poles()) {
      const Mat2 M = monodromy(d, base, p);
      json m = json::array();
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) m.push_back({num(M(r, c).real()), num(M(r, c).imag())});
      }
      char label[64];
      std::snprintf(label, sizeof label, "%.9g%+.9gi", p.real(), p.imag());
      mono.push_back({{"puncture", label}, {"matrix", m}});
    }
  }
  report["monodromy"] = mono;
  return report;
}

}  // namespace flatfront
