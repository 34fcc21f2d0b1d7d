#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "flatfront/error.hpp"
#include "flatfront/mesh.hpp"

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

struct ObjCounts {
  std::size_t v = 0, f = 0, l = 0;
  std::vector<std::array<double, 3>> verts;
};

ObjCounts parse_obj(const std::string& text) {
  ObjCounts c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      std::array<double, 3> p{};
      ls >> p[0] >> p[1] >> p[2];
      c.verts.push_back(p);
      ++c.v;
    } else if (tag == "f") {
      ++c.f;
    } else if (tag == "l") {
      ++c.l;
    }
  }
  return c;
}

FrontMesh small_voss_mesh() {
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  return mesh_front(d, default_grid(d, 24), 0.0);
}

}  // namespace

TEST_CASE("quantization of |rho|") {
  CHECK(quantize_rho(0.0) == 0);
  CHECK(quantize_rho(1.0) == 128);
  CHECK(quantize_rho(2.0) == 255);
  CHECK(quantize_rho(3.0) == 255);
  CHECK(quantize_rho(std::numeric_limits<double>::infinity()) == 255);
  CHECK(quantize_rho(std::nan("")) == 0);
}

TEST_CASE("empty mesh") {
  const FrontMesh m;
  const ObjCounts c = parse_obj(obj_text(m));
  CHECK(c.v == 0);
  CHECK(c.f == 0);
  const std::string ply = ply_bytes(m);
  CHECK(ply.find("element vertex 0\n") != std::string::npos);
  CHECK(ply.ends_with("end_header\n"));
}

TEST_CASE("horosphere mesh lies on a horosphere") {
  const WeierstrassData d = revolution_data({0.0, 1.0});
  const FrontMesh m = mesh_front(d, default_grid(d, 20), 0.0);
  REQUIRE(m.vertices.size() == 400);
  CHECK(m.faces.size() == 2 * 19 * 19);
  CHECK(m.overlays.empty());
  std::vector<MinkowskiVec> pts;
  for (const MeshVertex& v : m.vertices) pts.push_back(v.f);
  const HorosphereFit fit = fit_horosphere(pts);
  CHECK(fit.max_residual < 1e-8);
  CHECK(fit.nullness < 1e-8);
  CHECK(m.audit.passed);
}

TEST_CASE("voss mesh") {
  const FrontMesh m = small_voss_mesh();
  CHECK_FALSE(m.vertices.empty());
  CHECK_FALSE(m.faces.empty());
  CHECK(m.audit.passed);
  CHECK(m.audit.checked >= 1);
  CHECK(m.audit.max_defect <= 1e-6);
  for (const MeshVertex& v : m.vertices) {
    CHECK(std::hypot(v.ball[0], v.ball[1], v.ball[2]) < 1.0);
    CHECK(in_h3(v.f, 1e-6 * v.f.x0 * v.f.x0));
  }
  for (const auto& f : m.faces) {
    for (auto k : f) CHECK(k < m.vertices.size());
  }
  CHECK_FALSE(m.overlays.empty());
}

TEST_CASE("OBJ output re-parses") {
  const FrontMesh m = small_voss_mesh();
  const ObjCounts c = parse_obj(obj_text(m));
  std::size_t overlay_points = 0;
  for (const auto& o : m.overlays) overlay_points += o.size();
  CHECK(c.v == m.vertices.size() + overlay_points);
  CHECK(c.f == m.faces.size());
  CHECK(c.l == m.overlays.size());
  for (std::size_t k : {std::size_t{0}, m.vertices.size() - 1}) {
    for (int a = 0; a < 3; ++a) {
      CHECK(c.verts[k][a] == doctest::Approx(m.vertices[k].ball[a]).epsilon(1e-8));
    }
  }
}

TEST_CASE("PLY output re-parses") {
  const FrontMesh m = small_voss_mesh();
  const std::string ply = ply_bytes(m);
  const std::string end = "end_header\n";
  const std::size_t body = ply.find(end) + end.size();
  const std::size_t stride = 3 * sizeof(float) + 3;
  REQUIRE(ply.size() == body + m.vertices.size() * stride + m.faces.size() * (1 + 3 * 4));
  for (std::size_t k = 0; k < m.vertices.size(); k += 7) {
    const char* rec = ply.data() + body + k * stride;
    float x;
    std::memcpy(&x, rec, sizeof x);
    CHECK(x == doctest::Approx(m.vertices[k].ball[0]).epsilon(1e-6));
    const auto red = static_cast<std::uint8_t>(rec[12]);
    CHECK(red == quantize_rho(m.vertices[k].abs_rho));
  }
}

TEST_CASE("meshing is deterministic across thread counts") {
  const std::string a = obj_text(small_voss_mesh());
  setenv("FLATFRONT_THREADS", "1", 1);
  const std::string b = obj_text(small_voss_mesh());
  setenv("FLATFRONT_THREADS", "3", 1);
  const std::string c = obj_text(small_voss_mesh());
  unsetenv("FLATFRONT_THREADS");
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("grid validation and IO errors") {
  SampleGrid g;
  g.nu = 1;
  CHECK(code_of([&] { g.validate(); }) == ErrorCode::kBadParams);
  g.nu = 4;
  g.range = {1.0, 1.0, 0.0, 1.0};
  CHECK(code_of([&] { g.validate(); }) == ErrorCode::kBadParams);
  CHECK(code_of([] {
          export_mesh(FrontMesh{}, MeshFormat::kObj, "/nonexistent-dir/x/mesh.obj");
        }) == ErrorCode::kIoError);
}

TEST_CASE("export writes the serialized bytes") {
  const FrontMesh m = small_voss_mesh();
  const auto path = std::filesystem::temp_directory_path() / "flatfront_test_mesh.ply";
  export_mesh(m, MeshFormat::kPly, path.string());
  std::ifstream in(path, std::ios::binary);
  const std::string got((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(got == ply_bytes(m));
  std::filesystem::remove(path);
}

TEST_CASE("parallel fronts move every vertex off the original") {
  const WeierstrassData d = revolution_data({0.0, 1.0});
  const SampleGrid g = default_grid(d, 8);
  const FrontMesh a = mesh_front(d, g, 0.0);
  const FrontMesh b = mesh_front(d, g, 0.5);
  REQUIRE(a.vertices.size() == b.vertices.size());
  for (std::size_t k = 0; k < a.vertices.size(); ++k) {
    const double ip = lorentz_inner(a.vertices[k].f, b.vertices[k].f);
    CHECK(ip == doctest::Approx(-std::cosh(0.5)).epsilon(1e-8));
  }
}

TEST_CASE("horosphere fit needs four points") {
  const std::vector<MinkowskiVec> three(3, MinkowskiVec{1.0, 0.0, 0.0, 0.0});
  CHECK(code_of([&] { fit_horosphere(three); }) == ErrorCode::kBadParams);
}
