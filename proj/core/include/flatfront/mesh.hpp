#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flatfront/config.hpp"
#include "flatfront/contour.hpp"
#include "flatfront/h3_model.hpp"
#include "flatfront/legendrian.hpp"
#include "flatfront/weierstrass.hpp"

namespace flatfront {

/// Sampling of a chart by an nu x nv lattice of parameters (u, v):
///  kRectangle: w = u + iv in the data's chart;
///  kLogStrip:  z = e^(u + iv) (on log-chart data this is w = u + iv);
///  kDisk:      z = center + u e^(iv), u a radius and v an angle.
/// Masks are rectangles in (u, v); lattice points inside them are dropped.
struct SampleGrid {
  enum class Kind { kRectangle, kLogStrip, kDisk };

  Kind kind = Kind::kRectangle;
  Rect range;
  int nu = 64;
  int nv = 64;
  Complex center;
  std::vector<Rect> masks;

  double du() const { return (range.x1 - range.x0) / (nu - 1); }
  double dv() const { return (range.y1 - range.y0) / (nv - 1); }
  double u(int i) const { return range.x0 + i * du(); }
  double v(int j) const { return range.y0 + j * dv(); }
  bool masked(int i, int j) const;
  /// Chart point of the data at lattice point (i, j).
  Complex chart_point(const WeierstrassData& d, int i, int j) const;
  /// Chart point for continuous parameters.
  Complex chart_point(const WeierstrassData& d, double u, double v) const;

  /// Throws Error(kBadParams) for resolutions below 2x2 or an empty range.
  void validate() const;
};

/// Rectangle grid around the data's natural region with square masks of
/// half-width at least 1.5 cell diagonals around every finite pole.
SampleGrid default_grid(const WeierstrassData& d, int resolution);

struct MeshVertex {
  std::array<double, 3> ball{};
  MinkowskiVec f;
  Mat2 lift = Mat2::Identity();
  Complex w;
  double abs_rho = 0.0;
  double lambda = 0.0;
  bool singular = false;
  int grid_i = 0;
  int grid_j = 0;
};

struct AuditReport {
  std::size_t cycles = 0;   // independent cycles (non-tree edges)
  std::size_t checked = 0;
  double max_defect = 0.0;  // relative frame mismatch
  bool passed = true;
};

struct FrontMesh {
  std::vector<MeshVertex> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
  std::vector<std::vector<std::array<double, 3>>> overlays;  // singular curves in the ball
  AuditReport audit;
  double t = 0.0;
};

struct MeshOptions {
  double audit_fraction = 0.01;
  unsigned audit_seed = 12345;
  bool overlays = true;
  IntegratorOptions integrator;
};

/// Lift along a BFS spanning tree of lattice edges (E = id at the data's
/// base point), then f_t = parallel_front(E E^*, t) projected to the ball.
/// Lattice edges crossing a branch cut (a horizontal ray to the right of each
/// finite pole of plane-chart data) are removed. A random fraction of
/// non-tree edges is re-integrated to audit path independence.
FrontMesh mesh_front(const WeierstrassData& d, const SampleGrid& g, double t,
                     const MeshOptions& opts = {}, const Tolerances& tol = {});

enum class MeshFormat { kObj, kPly };

/// OBJ: v records (%.9g), f records, then overlay vertices and l records.
/// PLY: binary little-endian, float32 x y z, uchar RGB = quantized |rho|.
/// Error(kIoError) when the file cannot be written.
void export_mesh(const FrontMesh& m, MeshFormat format, const std::string& path);
std::string obj_text(const FrontMesh& m);
std::string ply_bytes(const FrontMesh& m);

/// Linear map [0, 2] -> 0..255, clamped.
std::uint8_t quantize_rho(double abs_rho);

/// Least-squares v with <f_i, v> = -1; for points on a horosphere v is null.
struct HorosphereFit {
  MinkowskiVec v;
  double max_residual = 0.0;  // max |<f_i, v> + 1|
  double nullness = 0.0;      // |<v, v>| / (v0^2 + |v|^2)
};
HorosphereFit fit_horosphere(std::span<const MinkowskiVec> points);

}  // namespace flatfront
