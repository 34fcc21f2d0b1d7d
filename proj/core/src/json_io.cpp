#include "flatfront/json_io.hpp"

#include <fstream>
#include <sstream>

#include "flatfront/error.hpp"

namespace flatfront {

using nlohmann::json;

namespace {

json complex_array(const Polynomial& p) {
  json out = json::array();
  for (const Complex& c : p.coeffs()) out.push_back({c.real(), c.imag()});
  return out;
}

Polynomial poly_from(const json& j) {
  std::vector<Complex> c;
  for (const json& e : j) {
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else {
      c.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return Polynomial(std::move(c));
}

json points(const std::vector<SpherePoint>& pts) {
  json out = json::array();
  for (const SpherePoint& p : pts) out.push_back(format_sphere_point(p));
  return out;
}

std::vector<SpherePoint> points_from(const json& j) {
  std::vector<SpherePoint> out;
  for (const json& e : j) out.push_back(parse_sphere_point(e.get<std::string>()));
  return out;
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace

json to_json(const Domain& d) {
  json out;
  out["kind"] = d.kind == Domain::Kind::kDisk ? "disk" : "punctured-sphere";
  out["removed"] = points(d.removed);
  if (d.kind == Domain::Kind::kDisk) out["radius"] = d.radius;
  return out;
}

Domain domain_from_json(const json& j) {
  return guarded([&] {
    Domain d;
    const std::string kind = j.value("kind", "punctured-sphere");
    if (kind == "disk") {
      d.kind = Domain::Kind::kDisk;
      d.radius = j.at("radius").get<double>();
    } else if (kind != "punctured-sphere") {
      throw Error(ErrorCode::kParseError, "unknown domain kind " + kind);
    }
    if (j.contains("removed")) d.removed = points_from(j.at("removed"));
    return d;
  });
}

json to_json(const MeroFn& f) {
  return {{"num", complex_array(f.num())},
          {"den", complex_array(f.den())},
          {"power", f.power()},
          {"domain", to_json(f.domain())}};
}

MeroFn mero_from_json(const json& j) {
  return guarded([&] {
    return MeroFn(poly_from(j.at("num")), poly_from(j.at("den")), j.value("power", 0.0),
                  j.contains("domain") ? domain_from_json(j.at("domain")) : Domain{});
  });
}

json to_json(const WeierstrassData& d) {
  json out;
  switch (d.family) {
    case Family::kRevolution:
      out["family"] = "revolution";
      out["params"] = {{"alpha", d.revolution->alpha}, {"c", d.revolution->c}};
      break;
    case Family::kVoss:
      out["family"] = "voss";
      out["params"] = {{"points", points(d.voss_points)}};
      if (d.normalization) {
        const Mobius& m = *d.normalization;
        out["params"]["normalization"] = {{m.a.real(), m.a.imag()},
                                          {m.b.real(), m.b.imag()},
                                          {m.c.real(), m.c.imag()},
                                          {m.d.real(), m.d.imag()}};
      }
      break;
    case Family::kCustom:
      out["family"] = "custom";
      out["params"] = json::object();
      break;
  }
  out["chart"] = d.chart == ChartKind::kLog ? "log" : "plane";
  out["ends"] = points(d.ends);
  out["h"] = to_json(d.h);
  out["rho"] = to_json(d.rho);
  out["t"] = to_json(d.t);
  return out;
}

WeierstrassData data_from_json(const json& j) {
  return guarded([&] {
    const std::string family = j.at("family").get<std::string>();
    if (family == "revolution") {
      const json& p = j.at("params");
      return revolution_data({p.at("alpha").get<double>(), p.at("c").get<double>()});
    }
    if (family == "voss") {
      const auto pts = points_from(j.at("params").at("points"));
      return voss_data(pts, pts.size() <= 3);
    }
    if (family != "custom") throw Error(ErrorCode::kParseError, "unknown family " + family);
    const std::string chart = j.value("chart", "plane");
    if (chart != "plane" && chart != "log") {
      throw Error(ErrorCode::kParseError, "unknown chart " + chart);
    }
    WeierstrassData d = custom_data(mero_from_json(j.at("h")), mero_from_json(j.at("rho")),
                                    points_from(j.at("ends")),
                                    chart == "log" ? ChartKind::kLog : ChartKind::kPlane);
    if (j.contains("t")) d.t = mero_from_json(j.at("t")).with_domain(d.domain);
    return d;
  });
}

WeierstrassData read_data(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::kIoError, "cannot open " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return data_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIoError, "cannot open " + path);
  os << text;
  if (!os) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace flatfront
