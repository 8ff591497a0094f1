#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hcad/document.hpp"
#include "hcad/trimesh.hpp"

namespace hcad::fixtures {

using Cell = std::array<int, 3>;

/// Unit-cube voxels whose exposed faces become bilinear NURBS quads.
SolidDocument voxel_document(const std::set<Cell>& cells, double size = 1.0);
/// Same surface as a mesh, two triangles per exposed face.
TriMesh voxel_mesh(const std::set<Cell>& cells);

SolidDocument cube_document(double size = 1.0, const Vec3& origin = {});
/// 3x3x1 ring of voxels (one through-hole).
std::set<Cell> ring_cells();
/// 5x3x1 slab with two separated through-holes.
std::set<Cell> two_hole_cells();

/// Rational quadratic unit circle in the xy plane: 9 poles, knots 0..4.
NurbsCurve unit_circle();

/// Lateral NURBS surface plus two planar circle caps.
SolidDocument cylinder_document(double radius, double height);
/// One rational biquadratic face.
SolidDocument sphere_document(double radius);
/// One rational biquadratic face, profile circle of `minor` about the z axis at `major`.
SolidDocument torus_document(double major, double minor);
/// Annular plate: inner and outer cylinders plus two planar annulus faces.
SolidDocument washer_document(double outer, double inner, double height);
/// A single flat quad (an open shell).
SolidDocument open_patch_document();
/// Square plate in z = 0 with a square hole, as one primitive face.
PrimitiveFace square_with_hole(double outer, double inner);

/// Closed grid mesh of a torus.
TriMesh torus_mesh(double major, double minor, int nu, int nv);

/// Random structurally valid document (NURBS and primitive faces) with
/// coordinates carrying more than six decimals.
SolidDocument random_document(std::mt19937_64& rng);

/// Document text as compact JSON in whatever layout nlohmann produces.
std::string to_loose_json(const SolidDocument& doc);

}  // namespace hcad::fixtures
