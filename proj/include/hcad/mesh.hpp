#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hcad/document.hpp"
#include "hcad/errors.hpp"
#include "hcad/nurbs.hpp"
#include "hcad/trimesh.hpp"

namespace hcad {

/// Triangles below this area are dropped while meshing.
inline constexpr double kDegenerateTriangleArea = 1e-12;
/// Vertex welding distance, in units of the 2x2x2 normalized box.
inline constexpr double kWeldTolerance = 1e-7;
/// Default chord tolerance, in units of the 2x2x2 normalized box.
inline constexpr double kDefaultChordTolerance = 1e-3;
/// Upper bound on grid segments per direction during adaptive refinement.
inline constexpr int kMaxSegmentsPerDirection = kMaxCurveSegments;

/// Raised by tessellate_document; lists every face that failed.
class DocumentTessellationError : public TessellationError {
 public:
  DocumentTessellationError(std::vector<int> faces, const std::string& message)
      : TessellationError(message), faces_(std::move(faces)) {}
  const std::vector<int>& failing_faces() const { return faces_; }

 private:
  std::vector<int> faces_;
};

/// nu x nv samples over the full parameter domain, two triangles per cell.
TriMesh tessellate_surface(const NurbsSurface& surface, int nu, int nv);

/// Parameter samples chosen by per-direction refinement: each knot span is
/// split into k equal pieces, k doubling until edge-midpoint and cell-center
/// chord deviation fall below `chord_tolerance` (model units).
struct AdaptiveGrid {
  std::vector<double> u;
  std::vector<double> v;
};
AdaptiveGrid adaptive_grid(const SurfaceEvaluator& eval, double chord_tolerance);

/// Triangulates sampled surface points; drops degenerate triangles and
/// rejects non-finite samples.
TriMesh mesh_from_grid(const Grid<Vec3>& samples);

/// Meshes one face. `chord_tolerance` is in model units.
TriMesh tessellate_face(const FaceRecord& face, double chord_tolerance);

/// Half the longest side of the document's control-geometry bounding box
/// (1 for an already normalized document).
double document_scale(const SolidDocument& doc);

/// Union of per-face meshes in face order, welded. `chord_tolerance` is
/// relative to the 2x2x2 normalized box and scaled by document_scale.
TriMesh tessellate_document(const SolidDocument& doc, double chord_tolerance = kDefaultChordTolerance);

/// Merges vertices closer than `tolerance` (first occurrence wins) and drops
/// triangles that collapse.
TriMesh weld_vertices(const TriMesh& mesh, double tolerance);

struct BoxTransform {
  double scale = 1.0;
  Vec3 translation;

  Vec3 apply(const Vec3& p) const { return scale * p + translation; }
  Vec3 invert(const Vec3& p) const { return (p - translation) / scale; }
};

/// Uniform scale so the longest AABB side is 2, AABB centered at the origin.
std::pair<TriMesh, BoxTransform> normalize_to_box(const TriMesh& mesh);

/// Area-uniform samples in model coordinates. Deterministic in `seed`.
PointCloud sample_surface_points(const TriMesh& mesh, std::size_t n, std::uint64_t seed);

/// Uniform scale (longest side 1) and shift into the unit cube [0,1]^3, centered.
PointCloud normalize_to_unit_cube(const PointCloud& cloud);

/// sample_surface_points followed by normalize_to_unit_cube.
PointCloud sample_points(const TriMesh& mesh, std::size_t n, std::uint64_t seed);

enum class MeshFormat { obj, stl_binary };

std::string export_mesh(const TriMesh& mesh, MeshFormat format);
std::string export_obj(const TriMesh& mesh);
std::string export_stl(const TriMesh& mesh);
/// One "x y z" line per point.
std::string export_xyz(const PointCloud& cloud);
/// Binary little-endian PLY with float32 vertices.
std::string export_ply(const PointCloud& cloud);

}  // namespace hcad
