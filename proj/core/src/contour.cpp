#include "flatfront/contour.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

namespace flatfront {

namespace {

// Grid edge identifiers: horizontal edge (i,j)-(i+1,j) and vertical edge
// (i,j)-(i,j+1).
std::int64_t h_edge(int i, int j, int nx) { return 2 * (static_cast<std::int64_t>(j) * nx + i); }
std::int64_t v_edge(int i, int j, int nx) {
  return 2 * (static_cast<std::int64_t>(j) * nx + i) + 1;
}

}  // namespace

std::vector<Polyline> marching_squares(const std::vector<double>& values, int nx, int ny,
                                       const Rect& rect) {
  std::vector<Polyline> out;
  if (nx < 2 || ny < 2 || values.size() != static_cast<std::size_t>(nx) * ny) return out;
  const double dx = (rect.x1 - rect.x0) / (nx - 1);
  const double dy = (rect.y1 - rect.y0) / (ny - 1);
  auto at = [&](int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; };
  auto pos = [&](int i, int j) { return Complex(rect.x0 + i * dx, rect.y0 + j * dy); };
  auto cross = [&](int i0, int j0, int i1, int j1) {
    const double a = at(i0, j0);
    const double b = at(i1, j1);
    const double s = a / (a - b);
    return pos(i0, j0) + s * (pos(i1, j1) - pos(i0, j0));
  };

  std::map<std::int64_t, Complex> point_of;
  std::map<std::int64_t, std::vector<std::int64_t>> links;
  auto link = [&](std::int64_t a, std::int64_t b) {
    links[a].push_back(b);
    links[b].push_back(a);
  };

  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const double v00 = at(i, j), v10 = at(i + 1, j), v11 = at(i + 1, j + 1), v01 = at(i, j + 1);
      if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v11) ||
          !std::isfinite(v01)) {
        continue;
      }
      const int cfg = (v00 >= 0) | ((v10 >= 0) << 1) | ((v11 >= 0) << 2) | ((v01 >= 0) << 3);
      if (cfg == 0 || cfg == 15) continue;
      // Edges: bottom (0), right (1), top (2), left (3).
      const std::int64_t ids[4] = {h_edge(i, j, nx), v_edge(i + 1, j, nx), h_edge(i, j + 1, nx),
                                   v_edge(i, j, nx)};
      auto touch = [&](int e) {
        const std::int64_t id = ids[e];
        if (!point_of.count(id)) {
          switch (e) {
            case 0: point_of[id] = cross(i, j, i + 1, j); break;
            case 1: point_of[id] = cross(i + 1, j, i + 1, j + 1); break;
            case 2: point_of[id] = cross(i, j + 1, i + 1, j + 1); break;
            default: point_of[id] = cross(i, j, i, j + 1); break;
          }
        }
        return id;
      };
      auto seg = [&](int a, int b) { link(touch(a), touch(b)); };
      switch (cfg) {
        case 1: case 14: seg(3, 0); break;
        case 2: case 13: seg(0, 1); break;
        case 3: case 12: seg(3, 1); break;
        case 4: case 11: seg(1, 2); break;
        case 6: case 9: seg(0, 2); break;
        case 7: case 8: seg(3, 2); break;
        case 5: case 10: {
          const bool center_pos = 0.25 * (v00 + v10 + v11 + v01) >= 0;
          // cfg 5: corners 00 and 11 positive.
          if ((cfg == 5) == center_pos) {
            seg(3, 2);
            seg(0, 1);
          } else {
            seg(3, 0);
            seg(1, 2);
          }
          break;
        }
        default: break;
      }
    }
  }

  std::map<std::int64_t, bool> used;
  auto walk = [&](std::int64_t start) {
    Polyline pl;
    std::int64_t prev = -1;
    std::int64_t cur = start;
    while (true) {
      used[cur] = true;
      pl.points.push_back(point_of[cur]);
      std::int64_t next = -1;
      for (std::int64_t n : links[cur]) {
        if (n != prev && !used[n]) {
          next = n;
          break;
        }
      }
      if (next < 0) {
        for (std::int64_t n : links[cur]) {
          if (n == start && n != prev && pl.points.size() > 2) pl.closed = true;
        }
        break;
      }
      prev = cur;
      cur = next;
    }
    return pl;
  };
  // Open chains start at endpoints (degree 1); the rest are loops.
  for (const auto& [id, nb] : links) {
    if (nb.size() == 1 && !used[id]) out.push_back(walk(id));
  }
  for (const auto& [id, nb] : links) {
    if (!used[id]) out.push_back(walk(id));
  }
  return out;
}

}  // namespace flatfront
