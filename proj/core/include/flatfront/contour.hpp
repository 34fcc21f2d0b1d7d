#pragma once

#include <vector>

#include "flatfront/complex.hpp"

namespace flatfront {

/// Axis-aligned rectangle [x0, x1] x [y0, y1] of a chart.
struct Rect {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;
};

struct Polyline {
  std::vector<Complex> points;
  bool closed = false;
};

/// Zero level set of a sampled scalar field. values[j * nx + i] is the
/// sample at x = x0 + i dx, y = y0 + j dy; non-finite samples mask their
/// cells. Ambiguous saddle cells are resolved by the cell-center average.
/// Segments are chained through shared grid edges, so the result has no
/// duplicate vertices and closed loops are flagged.
std::vector<Polyline> marching_squares(const std::vector<double>& values, int nx, int ny,
                                       const Rect& rect);

}  // namespace flatfront
