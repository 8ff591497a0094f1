#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "fixtures.hpp"
#include "hcad/errors.hpp"
#include "hcad/mesh.hpp"
#include "hcad/topo.hpp"

using namespace hcad;

namespace {

constexpr double kPi = std::numbers::pi;

const NurbsSurface& only_surface(const SolidDocument& doc) { return std::get<NurbsSurface>(doc.faces[0].payload); }

}  // namespace

TEST_CASE("fixed grid tessellation counts") {
  const TriMesh m = tessellate_surface(only_surface(fixtures::open_patch_document()), 5, 4);
  CHECK(m.vertices.size() == 20);
  CHECK(m.triangles.size() == 2 * 4 * 3);
  CHECK(surface_area(m) == doctest::Approx(1.0));
  CHECK_THROWS_AS(tessellate_surface(only_surface(fixtures::open_patch_document()), 1, 4), DomainError);
}

TEST_CASE("cube document meshes to 12 triangles after welding") {
  const TriMesh m = tessellate_document(fixtures::cube_document());
  CHECK(m.vertices.size() == 8);
  CHECK(m.triangles.size() == 12);
}

TEST_CASE("adaptive sphere mesh stays within tolerance of the surface") {
  for (double tol : {1e-2, 1e-3}) {
    const TriMesh m = tessellate_document(fixtures::sphere_document(1.0), tol);
    double worst = 0.0;
    for (const Vec3& p : m.vertices) CHECK(std::abs(norm(p) - 1.0) <= 1e-12);
    for (const Triangle& t : m.triangles) {
      const Vec3 c = (m.vertices[t[0]] + m.vertices[t[1]] + m.vertices[t[2]]) / 3.0;
      worst = std::max(worst, 1.0 - norm(c));
    }
    CHECK(worst <= 2.0 * tol);
  }
}

TEST_CASE("chord tolerance is relative to the document size") {
  const auto small = tessellate_document(fixtures::sphere_document(1.0));
  const auto large = tessellate_document(fixtures::sphere_document(1000.0));
  CHECK(small.triangles.size() == large.triangles.size());
}

TEST_CASE("failing faces are reported together") {
  SolidDocument doc = fixtures::cube_document();
  NurbsSurface bad;
  bad.u_knots = {{0.0, 0.5, 1.0}, {1, 2, 1}};
  bad.v_knots = {{0.0, 1.0}, {2, 2}};
  bad.poles = Grid<Vec3>(2, 2);
  bad.weights = Grid<double>(2, 2, 1.0);
  doc.faces.insert(doc.faces.begin() + 2, {bad});
  doc.faces.push_back({bad});
  try {
    tessellate_document(doc);
    FAIL("expected a tessellation error");
  } catch (const DocumentTessellationError& e) {
    CHECK(e.failing_faces() == std::vector<int>{2, 7});
  }
}

TEST_CASE("welding merges coincident vertices and drops collapsed triangles") {
  TriMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 0, 1e-9}, {1, 1, 0}, {0, 0, 5e-8}};
  m.triangles = {{0, 1, 2}, {3, 4, 2}, {0, 5, 1}};
  const TriMesh w = weld_vertices(m, 1e-7);
  CHECK(w.vertices.size() == 4);
  REQUIRE(w.triangles.size() == 2);
  CHECK(w.triangles[1] == Triangle{1, 3, 2});
}

TEST_CASE("box normalization") {
  const auto [m, xf] = normalize_to_box(tessellate_document(fixtures::cube_document(3.0, {5, -2, 1})));
  const Aabb box = compute_aabb(m);
  CHECK(box.extents.x == doctest::Approx(2.0));
  CHECK(box.min.x == doctest::Approx(-1.0));
  CHECK(box.max.z == doctest::Approx(1.0));
  CHECK(distance(xf.invert(xf.apply({1, 2, 3})), Vec3{1, 2, 3}) < 1e-12);
}

TEST_CASE("surface sampling is deterministic and area-uniform") {
  const TriMesh cube = tessellate_document(fixtures::cube_document());
  const PointCloud a = sample_surface_points(cube, 6000, 42);
  const PointCloud b = sample_surface_points(cube, 6000, 42);
  const PointCloud c = sample_surface_points(cube, 6000, 43);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  int on_bottom = 0;
  for (const Vec3& p : a.points) {
    const double d = std::min({p.x, p.y, p.z, 1 - p.x, 1 - p.y, 1 - p.z});
    CHECK(std::abs(d) <= 1e-12);
    if (p.z <= 1e-12) ++on_bottom;
  }
  CHECK(std::abs(on_bottom - 1000) < 150);  // ~4.7 sigma for p = 1/6
}

TEST_CASE("unit cube normalization") {
  const TriMesh m = tessellate_document(fixtures::cylinder_document(1.0, 4.0));
  const PointCloud p = sample_points(m, 2000, 1);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const Vec3& q : p.points) {
    for (int k = 0; k < 3; ++k) {
      lo = std::min(lo, q[k]);
      hi = std::max(hi, q[k]);
    }
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 1.0);
  CHECK(hi - lo == doctest::Approx(1.0));
  CHECK_THROWS_AS(normalize_to_unit_cube(PointCloud{}), DegenerateInputError);
}

TEST_CASE("binary STL size and layout") {
  const TriMesh m = tessellate_document(fixtures::cube_document());
  const std::string stl = export_stl(m);
  CHECK(stl.size() == 84 + 50 * m.triangles.size());
  std::uint32_t count = 0;
  std::memcpy(&count, stl.data() + 80, 4);
  CHECK(count == 12);
  CHECK(stl.rfind("hcad", 0) == 0);
}

TEST_CASE("OBJ export") {
  const TriMesh m = tessellate_document(fixtures::cube_document());
  const std::string obj = export_obj(m);
  std::size_t v = 0;
  std::size_t f = 0;
  std::size_t pos = 0;
  while (pos < obj.size()) {
    const auto end = obj.find('\n', pos);
    if (obj.compare(pos, 2, "v ") == 0) ++v;
    if (obj.compare(pos, 2, "f ") == 0) ++f;
    pos = end + 1;
  }
  CHECK(v == 8);
  CHECK(f == 12);
  CHECK(obj.find("f 0 ") == std::string::npos);
  CHECK_THROWS_AS(export_obj(TriMesh{}), DegenerateInputError);
}

TEST_CASE("point cloud exports") {
  PointCloud c;
  c.points = {{0.5, 0.25, 1}, {0, 0, 0}};
  CHECK(export_xyz(c) == "0.5 0.25 1\n0 0 0\n");
  const std::string ply = export_ply(c);
  const auto header_end = ply.find("end_header\n");
  REQUIRE(header_end != std::string::npos);
  CHECK(ply.size() == header_end + 11 + 2 * 12);
  CHECK(ply.find("element vertex 2") != std::string::npos);
}

TEST_CASE("cylinder and sphere mass properties") {
  const MetadataRecord cyl = compute_metadata(fixtures::cylinder_document(1.0, 2.0));
  CHECK(cyl.surface_area == doctest::Approx(2 * kPi + 4 * kPi).epsilon(0.01));
  REQUIRE(cyl.volume);
  CHECK(*cyl.volume == doctest::Approx(2 * kPi).epsilon(0.01));
  const MetadataRecord sph = compute_metadata(fixtures::sphere_document(1.0));
  CHECK(sph.surface_area == doctest::Approx(4 * kPi).epsilon(0.01));
  REQUIRE(sph.volume);
  CHECK(*sph.volume == doctest::Approx(4 * kPi / 3).epsilon(0.01));
}
