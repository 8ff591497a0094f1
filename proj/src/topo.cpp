#include "hcad/topo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <nlohmann/json.hpp>
#include <span>

namespace hcad {

namespace {

struct EdgeUse {
  std::uint32_t tri;
  bool forward;  // edge stored as (min, max) appears in this order in the triangle
};

// Undirected edges sorted by key, with the triangle sides that use each one.
struct EdgeTable {
  std::vector<std::uint32_t> offsets;  // uses of edge e: uses[offsets[e], offsets[e + 1])
  std::vector<EdgeUse> uses;
  std::vector<std::array<std::uint32_t, 3>> side_edge;  // edge id of each triangle side

  std::size_t size() const { return offsets.size() - 1; }
  std::span<const EdgeUse> uses_of(std::uint32_t e) const {
    return {uses.data() + offsets[e], uses.data() + offsets[e + 1]};
  }
};

EdgeTable build_edges(const TriMesh& mesh) {
  struct Side {
    std::uint32_t other;  // larger vertex of the edge
    std::uint32_t tri;
    std::uint32_t k;
  };
  // Bucket sides by their smaller vertex, then order each small bucket.
  std::vector<std::uint32_t> bucket(mesh.vertices.size() + 1, 0);
  for (const Triangle& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) ++bucket[std::min(tri[k], tri[(k + 1) % 3]) + 1];
  }
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) bucket[v + 1] += bucket[v];
  std::vector<Side> sides(mesh.triangles.size() * 3);
  std::vector<std::uint32_t> fill(bucket.begin(), bucket.end() - 1);
  for (std::uint32_t t = 0; t < mesh.triangles.size(); ++t) {
    const Triangle& tri = mesh.triangles[t];
    for (std::uint32_t k = 0; k < 3; ++k) {
      const std::uint32_t a = tri[k];
      const std::uint32_t b = tri[(k + 1) % 3];
      sides[fill[std::min(a, b)]++] = {std::max(a, b), t, k};
    }
  }
  auto less = [](const Side& x, const Side& y) {
    return x.other != y.other ? x.other < y.other : (x.tri != y.tri ? x.tri < y.tri : x.k < y.k);
  };
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    std::sort(sides.begin() + bucket[v], sides.begin() + bucket[v + 1], less);
  }

  EdgeTable table;
  table.side_edge.resize(mesh.triangles.size());
  table.uses.reserve(sides.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    for (std::uint32_t i = bucket[v]; i < bucket[v + 1]; ++i) {
      if (i == bucket[v] || sides[i].other != sides[i - 1].other) table.offsets.push_back(i);
      const Triangle& tri = mesh.triangles[sides[i].tri];
      table.uses.push_back({sides[i].tri, tri[sides[i].k] < tri[(sides[i].k + 1) % 3]});
      table.side_edge[sides[i].tri][sides[i].k] = static_cast<std::uint32_t>(table.offsets.size() - 1);
    }
  }
  table.offsets.push_back(static_cast<std::uint32_t>(sides.size()));
  return table;
}

bool all_manifold(const EdgeTable& edges) {
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    if (edges.uses_of(e).size() != 2) return false;
  }
  return true;
}

// Component id per triangle; components are joined through shared edges.
std::vector<int> label_components(const TriMesh& mesh, const EdgeTable& edges, int& count) {
  std::vector<int> label(mesh.triangles.size(), -1);
  count = 0;
  for (std::uint32_t seed = 0; seed < mesh.triangles.size(); ++seed) {
    if (label[seed] >= 0) continue;
    std::deque<std::uint32_t> queue{seed};
    label[seed] = count;
    while (!queue.empty()) {
      const std::uint32_t t = queue.front();
      queue.pop_front();
      for (std::uint32_t e : edges.side_edge[t]) {
        for (const EdgeUse& use : edges.uses_of(e)) {
          if (label[use.tri] < 0) {
            label[use.tri] = count;
            queue.push_back(use.tri);
          }
        }
      }
    }
    ++count;
  }
  return label;
}

// Flips triangles so shared edges run in opposite directions. Returns true
// when the mesh is manifold and the orientation is consistent everywhere.
bool orient(TriMesh& mesh, const EdgeTable& edges) {
  const bool manifold = all_manifold(edges);
  std::vector<int> flipped(mesh.triangles.size(), -1);  // -1 unvisited, 0 kept, 1 flipped
  bool consistent = true;
  // Direction of the side's edge in triangle t after any pending flip.
  auto direction = [&](std::uint32_t t, bool forward) { return forward != (flipped[t] == 1); };
  for (std::uint32_t seed = 0; seed < mesh.triangles.size(); ++seed) {
    if (flipped[seed] >= 0) continue;
    flipped[seed] = 0;
    std::deque<std::uint32_t> queue{seed};
    while (!queue.empty()) {
      const std::uint32_t t = queue.front();
      queue.pop_front();
      for (std::uint32_t e : edges.side_edge[t]) {
        const auto uses = edges.uses_of(e);
        if (uses.size() != 2 || uses[0].tri == uses[1].tri) continue;
        const EdgeUse& mine = uses[0].tri == t ? uses[0] : uses[1];
        const EdgeUse& other = uses[0].tri == t ? uses[1] : uses[0];
        if (flipped[other.tri] < 0) {
          flipped[other.tri] = other.forward == direction(t, mine.forward) ? 1 : 0;
          queue.push_back(other.tri);
        } else if (direction(other.tri, other.forward) == direction(t, mine.forward)) {
          consistent = false;
        }
      }
    }
  }
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    if (flipped[t] == 1) std::swap(mesh.triangles[t][1], mesh.triangles[t][2]);
  }
  return manifold && consistent;
}

long count_vertices(const TriMesh& mesh) {
  std::vector<char> used(mesh.vertices.size(), 0);
  long n = 0;
  for (const Triangle& t : mesh.triangles) {
    for (std::uint32_t v : t) {
      if (!used[v]) {
        used[v] = 1;
        ++n;
      }
    }
  }
  return n;
}

}  // namespace

Aabb compute_aabb(const TriMesh& mesh) {
  if (mesh.vertices.empty()) throw DegenerateInputError("bounding box of an empty mesh");
  Aabb box;
  box.min = box.max = mesh.vertices.front();
  for (const Vec3& p : mesh.vertices) {
    for (int a = 0; a < 3; ++a) {
      box.min[a] = std::min(box.min[a], p[a]);
      box.max[a] = std::max(box.max[a], p[a]);
    }
  }
  box.extents = box.max - box.min;
  box.diagonal = norm(box.extents);
  if (!(box.diagonal > 0.0)) throw DegenerateInputError("bounding box has zero extent");
  return box;
}

double surface_area(const TriMesh& mesh) {
  double total = 0.0;
  for (const Triangle& t : mesh.triangles) total += triangle_area(mesh, t);
  return total;
}

double signed_volume(const TriMesh& mesh) {
  double total = 0.0;
  for (const Triangle& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    total += dot(a, cross(b, c));
  }
  return total / 6.0;
}

bool is_watertight(const TriMesh& mesh) {
  if (mesh.triangles.empty()) return false;
  const EdgeTable edges = build_edges(mesh);
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    const auto uses = edges.uses_of(e);
    if (uses.size() != 2 || uses[0].forward == uses[1].forward) return false;
  }
  return true;
}

bool orient_consistently(TriMesh& mesh) { return orient(mesh, build_edges(mesh)); }

int connected_components(const TriMesh& mesh) {
  int count = 0;
  label_components(mesh, build_edges(mesh), count);
  return count;
}

EulerGenus euler_genus(const TriMesh& mesh) {
  if (mesh.triangles.empty()) throw ManifoldError("empty mesh");
  const EdgeTable edges = build_edges(mesh);
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    const auto n = edges.uses_of(e).size();
    if (n != 2) throw ManifoldError("edge with " + std::to_string(n) + " incident triangles");
  }
  EulerGenus out;
  out.euler_characteristic =
      count_vertices(mesh) - static_cast<long>(edges.size()) + static_cast<long>(mesh.triangles.size());
  const long twice_genus = 2 - out.euler_characteristic;
  if (twice_genus % 2 != 0) throw ManifoldError("odd 2 - chi; surface is not a closed orientable manifold");
  if (twice_genus < 0) throw ManifoldError("chi > 2; surface has more than one component");
  out.genus = static_cast<int>(twice_genus / 2);
  return out;
}

MetadataRecord compute_metadata(const TriMesh& welded) {
  MetadataRecord rec;
  const Aabb box = compute_aabb(welded);
  rec.length = box.extents.x;
  rec.width = box.extents.y;
  rec.height = box.extents.z;
  rec.surface_area = surface_area(welded);

  TriMesh oriented = welded;
  const EdgeTable edges = build_edges(oriented);
  rec.watertight = !oriented.triangles.empty() && orient(oriented, edges);
  rec.euler_characteristic =
      count_vertices(oriented) - static_cast<long>(edges.size()) + static_cast<long>(oriented.triangles.size());

  if (!rec.watertight) {
    rec.warnings.push_back("mesh is not watertight; volume and through-hole count omitted");
    return rec;
  }
  rec.volume = std::abs(signed_volume(oriented));

  // Closed orientable components each contribute (2 - chi_i) / 2 holes.
  int ncomp = 0;
  const auto label = label_components(oriented, edges, ncomp);
  std::vector<long> chi(static_cast<std::size_t>(ncomp), 0);
  // A pinch vertex counts once in every component that touches it.
  std::vector<std::vector<std::uint32_t>> members(static_cast<std::size_t>(ncomp));
  for (std::uint32_t t = 0; t < oriented.triangles.size(); ++t) members[label[t]].push_back(t);
  std::vector<int> stamp(oriented.vertices.size(), -1);
  for (int c = 0; c < ncomp; ++c) {
    for (std::uint32_t t : members[c]) {
      chi[c] += 1;
      for (std::uint32_t v : oriented.triangles[t]) {
        if (stamp[v] != c) {
          stamp[v] = c;
          chi[c] += 1;
        }
      }
    }
  }
  for (std::uint32_t e = 0; e < edges.size(); ++e) chi[label[edges.uses_of(e).front().tri]] -= 1;
  rec.genus = 0;
  for (int c = 0; c < ncomp; ++c) rec.genus += static_cast<int>((2 - chi[c]) / 2);
  if (ncomp > 1) rec.warnings.push_back("mesh has " + std::to_string(ncomp) + " components; holes summed per component");
  return rec;
}

MetadataRecord compute_metadata(const SolidDocument& doc, double chord_tolerance) {
  return compute_metadata(tessellate_document(doc, chord_tolerance));
}

std::string metadata_to_json(const MetadataRecord& r) {
  nlohmann::ordered_json j;
  j["length"] = r.length;
  j["width"] = r.width;
  j["height"] = r.height;
  j["surface_area"] = r.surface_area;
  if (r.volume) j["volume"] = *r.volume;
  if (r.watertight) {
    j["through_holes"] = r.genus;
  } else {
    j["through_holes"] = nullptr;
  }
  j["watertight"] = r.watertight;
  j["euler_characteristic"] = r.euler_characteristic;
  return j.dump();
}

}  // namespace hcad
