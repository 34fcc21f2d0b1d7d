#include "flatfront/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Dense>

#include "flatfront/analysis.hpp"
#include "flatfront/error.hpp"

namespace flatfront {

namespace {

constexpr int kNone = -1;

struct Lattice {
  const SampleGrid& g;
  int index(int i, int j) const { return j * g.nu + i; }
  int size() const { return g.nu * g.nv; }
};

bool crosses_cut(Complex a, Complex b, const std::vector<Complex>& poles) {
  for (const Complex& p : poles) {
    const bool below_a = a.imag() < p.imag();
    const bool below_b = b.imag() < p.imag();
    if (below_a == below_b) continue;
    const double s = (p.imag() - a.imag()) / (b.imag() - a.imag());
    if (a.real() + s * (b.real() - a.real()) >= p.real()) return true;
  }
  return false;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_threads(), n);
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = t; k < n; k += workers) fn(k);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

bool SampleGrid::masked(int i, int j) const {
  const double x = u(i), y = v(j);
  return std::any_of(masks.begin(), masks.end(), [&](const Rect& r) {
    return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
  });
}

Complex SampleGrid::chart_point(const WeierstrassData& d, double uu, double vv) const {
  switch (kind) {
    case Kind::kRectangle:
      return {uu, vv};
    case Kind::kLogStrip:
      return d.chart == ChartKind::kLog ? Complex(uu, vv) : std::exp(Complex(uu, vv));
    case Kind::kDisk: {
      const Complex z = center + std::polar(uu, vv);
      return d.chart == ChartKind::kLog ? std::log(z) : z;
    }
  }
  return {};
}

Complex SampleGrid::chart_point(const WeierstrassData& d, int i, int j) const {
  return chart_point(d, u(i), v(j));
}

void SampleGrid::validate() const {
  if (nu < 2 || nv < 2) throw Error(ErrorCode::kBadParams, "grid resolution must be >= 2x2");
  if (!(range.x1 > range.x0) || !(range.y1 > range.y0)) {
    throw Error(ErrorCode::kBadParams, "grid range is empty");
  }
}

SampleGrid default_grid(const WeierstrassData& d, int resolution) {
  SampleGrid g;
  g.nu = g.nv = resolution;
  if (d.chart == ChartKind::kLog) {
    g.range = {-1.0, 1.0, -std::numbers::pi, std::numbers::pi};
    return g;
  }
  g.range = {-2.0, 2.0, -2.0, 2.0};
  const double diag = std::hypot(g.du(), g.dv());
  const double half = std::max(1.5 * diag, 0.1);
  std::vector<Complex> centers = d.base_poles();
  for (const SpherePoint& e : d.ends) {
    if (!e.is_infinite()) centers.push_back(e.value());
  }
  for (const Complex& p : centers) {
    g.masks.push_back({p.real() - half, p.real() + half, p.imag() - half, p.imag() + half});
  }
  return g;
}

FrontMesh mesh_front(const WeierstrassData& d, const SampleGrid& g, double t,
                     const MeshOptions& opts, const Tolerances& tol) {
  g.validate();
  const Lattice lat{g};
  const int n = lat.size();
  IntegratorOptions iopts = opts.integrator;
  iopts.record_steps = false;

  const std::vector<Complex> all_poles = d.base_poles();
  const std::vector<Complex> poles =
      d.chart == ChartKind::kPlane ? all_poles : std::vector<Complex>{};
  std::vector<Complex> w(n);
  std::vector<char> alive(n, 0);
  for (int j = 0; j < g.nv; ++j) {
    for (int i = 0; i < g.nu; ++i) {
      const int k = lat.index(i, j);
      w[k] = g.chart_point(d, i, j);
      alive[k] = !g.masked(i, j) && std::isfinite(std::abs(w[k])) &&
                 chart_pole_distance(d.chart, all_poles, w[k]) >= 1e-9;
    }
  }
  auto edge_open = [&](int a, int b) {
    return alive[a] && alive[b] && !crosses_cut(w[a], w[b], poles);
  };

  // Root: the live vertex closest to the base point.
  const Complex base = d.base_point();
  int root = kNone;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    if (alive[k] && std::abs(w[k] - base) < best) {
      best = std::abs(w[k] - base);
      root = k;
    }
  }
  if (root == kNone) throw Error(ErrorCode::kBadParams, "grid is fully masked");

  // BFS levels.
  std::vector<int> parent(n, kNone);
  std::vector<char> reached(n, 0);
  std::vector<std::vector<int>> levels{{root}};
  reached[root] = 1;
  while (!levels.back().empty()) {
    std::vector<int> next;
    for (int k : levels.back()) {
      const int i = k % g.nu, j = k / g.nu;
      const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[0] >= g.nu || q[1] < 0 || q[1] >= g.nv) continue;
        const int m = lat.index(q[0], q[1]);
        if (reached[m] || !edge_open(k, m)) continue;
        reached[m] = 1;
        parent[m] = k;
        next.push_back(m);
      }
    }
    levels.push_back(std::move(next));
  }

  std::vector<Mat2> frame(n, Mat2::Identity());
  {
    const std::array<Complex, 2> path = {base, w[root]};
    frame[root] = lift_along(d, path, Mat2::Identity(), iopts);
  }
  for (std::size_t L = 1; L < levels.size(); ++L) {
    const std::vector<int>& lv = levels[L];
    parallel_for(lv.size(), [&](std::size_t s) {
      const int k = lv[s];
      const std::array<Complex, 2> path = {w[parent[k]], w[k]};
      frame[k] = lift_along(d, path, frame[parent[k]], iopts);
    });
  }

  FrontMesh mesh;
  mesh.t = t;
  std::vector<int> vid(n, kNone);
  for (int k = 0; k < n; ++k) {
    if (!reached[k]) continue;
    MeshVertex v;
    const FrontPoint fp = parallel_front(front_from_lift(frame[k], tol.lift), t);
    v.f = fp.f.coords();
    v.ball = ball_project(fp.f);
    v.lift = frame[k];
    v.w = w[k];
    v.abs_rho = d.abs_rho_at(w[k]);
    v.lambda = (1.0 + v.abs_rho * v.abs_rho) * std::norm(d.omega_at(w[k]));
    v.singular = std::abs(v.abs_rho - 1.0) <= tol.sing;
    v.grid_i = k % g.nu;
    v.grid_j = k / g.nu;
    vid[k] = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(v);
  }

  for (int j = 0; j + 1 < g.nv; ++j) {
    for (int i = 0; i + 1 < g.nu; ++i) {
      const int a = lat.index(i, j), b = lat.index(i + 1, j), c = lat.index(i + 1, j + 1),
                e = lat.index(i, j + 1);
      if (!reached[a] || !reached[b] || !reached[c] || !reached[e]) continue;
      if (!edge_open(a, b) || !edge_open(b, c) || !edge_open(c, e) || !edge_open(e, a)) continue;
      const auto A = static_cast<std::uint32_t>(vid[a]), B = static_cast<std::uint32_t>(vid[b]),
                 C = static_cast<std::uint32_t>(vid[c]), D = static_cast<std::uint32_t>(vid[e]);
      mesh.faces.push_back({A, B, C});
      mesh.faces.push_back({A, C, D});
    }
  }

  // Audit: every open non-tree edge closes one independent cycle.
  std::vector<std::pair<int, int>> extra;
  for (int j = 0; j < g.nv; ++j) {
    for (int i = 0; i < g.nu; ++i) {
      const int a = lat.index(i, j);
      if (!reached[a]) continue;
      for (const int m : {i + 1 < g.nu ? lat.index(i + 1, j) : kNone,
                          j + 1 < g.nv ? lat.index(i, j + 1) : kNone}) {
        if (m == kNone || !reached[m] || !edge_open(a, m)) continue;
        if (parent[m] == a || parent[a] == m) continue;
        extra.emplace_back(a, m);
      }
    }
  }
  mesh.audit.cycles = extra.size();
  if (!extra.empty() && opts.audit_fraction > 0.0) {
    std::mt19937 gen(opts.audit_seed);
    std::shuffle(extra.begin(), extra.end(), gen);
    const auto take = std::min(
        extra.size(), static_cast<std::size_t>(std::ceil(opts.audit_fraction * extra.size())));
    std::vector<double> defect(take, 0.0);
    parallel_for(take, [&](std::size_t s) {
      const auto [a, m] = extra[s];
      const std::array<Complex, 2> path = {w[a], w[m]};
      const Mat2 got = lift_along(d, path, frame[a], iopts);
      defect[s] = (got - frame[m]).norm() / frame[m].norm();
    });
    mesh.audit.checked = take;
    mesh.audit.max_defect = *std::max_element(defect.begin(), defect.end());
    mesh.audit.passed = mesh.audit.max_defect <= tol.loop_closure;
  }

  if (opts.overlays) {
    std::vector<double> field(n, std::numeric_limits<double>::quiet_NaN());
    for (int k = 0; k < n; ++k) {
      if (reached[k]) field[k] = d.abs_rho_at(w[k]) - 1.0;
    }
    for (const Polyline& pl : marching_squares(field, g.nu, g.nv, g.range)) {
      std::vector<std::array<double, 3>> curve;
      for (const Complex& uv : pl.points) {
        const int i = std::clamp(static_cast<int>(std::lround((uv.real() - g.range.x0) / g.du())), 0,
                                 g.nu - 1);
        const int j = std::clamp(static_cast<int>(std::lround((uv.imag() - g.range.y0) / g.dv())), 0,
                                 g.nv - 1);
        int from = kNone;
        for (int dj = -1; dj <= 1 && from == kNone; ++dj) {
          for (int di = -1; di <= 1 && from == kNone; ++di) {
            const int ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii >= g.nu || jj >= g.nv) continue;
            if (reached[lat.index(ii, jj)]) from = lat.index(ii, jj);
          }
        }
        if (from == kNone) continue;
        const Complex target = g.chart_point(d, uv.real(), uv.imag());
        const std::array<Complex, 2> path = {w[from], target};
        const Mat2 E = lift_along(d, path, frame[from], iopts);
        curve.push_back(ball_project(parallel_front(front_from_lift(E, tol.lift), t).f));
      }
      if (pl.closed && !curve.empty()) curve.push_back(curve.front());
      if (curve.size() >= 2) mesh.overlays.push_back(std::move(curve));
    }
  }
  return mesh;
}

std::string obj_text(const FrontMesh& m) {
  std::string out;
  out += "# flat front, t = " + fmt(m.t) + "\n";
  for (const MeshVertex& v : m.vertices) {
    out += "v " + fmt(v.ball[0]) + " " + fmt(v.ball[1]) + " " + fmt(v.ball[2]) + "\n";
  }
  for (const auto& f : m.faces) {
    out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " +
           std::to_string(f[2] + 1) + "\n";
  }
  std::size_t next = m.vertices.size() + 1;
  for (const auto& curve : m.overlays) {
    for (const auto& p : curve) {
      out += "v " + fmt(p[0]) + " " + fmt(p[1]) + " " + fmt(p[2]) + "\n";
    }
    out += "l";
    for (std::size_t k = 0; k < curve.size(); ++k) out += " " + std::to_string(next + k);
    out += "\n";
    next += curve.size();
  }
  return out;
}

std::uint8_t quantize_rho(double abs_rho) {
  if (!(abs_rho > 0.0)) return 0;
  const double q = std::round(abs_rho / 2.0 * 255.0);
  return static_cast<std::uint8_t>(std::clamp(q, 0.0, 255.0));
}

std::string ply_bytes(const FrontMesh& m) {
  static_assert(std::endian::native == std::endian::little, "PLY writer assumes little endian");
  std::string out = "ply\nformat binary_little_endian 1.0\n";
  out += "element vertex " + std::to_string(m.vertices.size()) + "\n";
  out += "property float x\nproperty float y\nproperty float z\n";
  out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "element face " + std::to_string(m.faces.size()) + "\n";
  out += "property list uchar int vertex_indices\nend_header\n";
  auto put = [&](const void* p, std::size_t n) { out.append(static_cast<const char*>(p), n); };
  for (const MeshVertex& v : m.vertices) {
    for (double c : v.ball) {
      const float x = static_cast<float>(c);
      put(&x, sizeof x);
    }
    const std::uint8_t q = quantize_rho(v.abs_rho);
    const std::uint8_t rgb[3] = {q, q, q};
    put(rgb, 3);
  }
  for (const auto& f : m.faces) {
    const std::uint8_t three = 3;
    put(&three, 1);
    for (std::uint32_t idx : f) {
      const std::int32_t k = static_cast<std::int32_t>(idx);
      put(&k, sizeof k);
    }
  }
  return out;
}

void export_mesh(const FrontMesh& m, MeshFormat format, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIoError, "cannot open " + path);
  const std::string data = format == MeshFormat::kObj ? obj_text(m) : ply_bytes(m);
  os.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!os) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

HorosphereFit fit_horosphere(std::span<const MinkowskiVec> points) {
  if (points.size() < 4) throw Error(ErrorCode::kBadParams, "need at least four points");
  Eigen::MatrixXd A(points.size(), 4);
  Eigen::VectorXd rhs = Eigen::VectorXd::Constant(points.size(), -1.0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const MinkowskiVec& p = points[k];
    A.row(k) << -p.x0, p.x1, p.x2, p.x3;
  }
  const Eigen::Vector4d v = A.colPivHouseholderQr().solve(rhs);
  HorosphereFit fit;
  fit.v = {v[0], v[1], v[2], v[3]};
  for (const MinkowskiVec& p : points) {
    fit.max_residual = std::max(fit.max_residual, std::abs(lorentz_inner(p, fit.v) + 1.0));
  }
  fit.nullness = std::abs(lorentz_inner(fit.v, fit.v)) / v.squaredNorm();
  return fit;
}

}  // namespace flatfront
