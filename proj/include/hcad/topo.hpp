#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcad/document.hpp"
#include "hcad/mesh.hpp"
#include "hcad/trimesh.hpp"

namespace hcad {

struct Aabb {
  Vec3 min;
  Vec3 max;
  Vec3 extents;
  double diagonal = 0.0;
};

/// Throws DegenerateInputError for empty meshes or zero diagonal.
Aabb compute_aabb(const TriMesh& mesh);

double surface_area(const TriMesh& mesh);

/// Divergence-theorem volume: sum of v0 . (v1 x v2) / 6. Meaningful only
/// for closed, consistently oriented meshes.
double signed_volume(const TriMesh& mesh);

/// Every undirected edge is used by exactly two triangles, in opposite directions.
bool is_watertight(const TriMesh& mesh);

/// Breadth-first flipping so neighbours agree on edge direction. Returns
/// false if some edge is non-manifold or the surface is non-orientable.
bool orient_consistently(TriMesh& mesh);

struct EulerGenus {
  long euler_characteristic = 0;
  int genus = 0;
};

/// chi = V - E + F over referenced vertices; genus = (2 - chi) / 2.
/// Throws ManifoldError unless every edge has exactly two incident triangles
/// and (2 - chi) is even and non-negative.
EulerGenus euler_genus(const TriMesh& mesh);

/// Number of edge-connected triangle components.
int connected_components(const TriMesh& mesh);

struct MetadataRecord {
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  double surface_area = 0.0;
  std::optional<double> volume;
  int genus = 0;
  long euler_characteristic = 0;
  bool watertight = false;
  std::vector<std::string> warnings;
};

/// Metadata of an already welded mesh.
MetadataRecord compute_metadata(const TriMesh& welded);
/// Tessellates, welds, and measures a document.
MetadataRecord compute_metadata(const SolidDocument& doc, double chord_tolerance = kDefaultChordTolerance);

/// {"length","width","height","surface_area","volume"?,"through_holes","watertight","euler_characteristic"}
std::string metadata_to_json(const MetadataRecord& record);

}  // namespace hcad
