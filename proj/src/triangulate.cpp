#include <algorithm>
#include <cmath>
#include <numeric>

#include "hcad/errors.hpp"
#include "hcad/primitives.hpp"

namespace hcad {

namespace {

struct P2 {
  double x;
  double y;
};

double cross2(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double signed_area(const std::vector<P2>& pts, const std::vector<std::uint32_t>& ring) {
  double a = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const P2& p = pts[ring[i]];
    const P2& q = pts[ring[(i + 1) % ring.size()]];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

bool same_point(const P2& a, const P2& b) { return a.x == b.x && a.y == b.y; }

bool segments_cross(const P2& a, const P2& b, const P2& c, const P2& d) {
  const double d1 = cross2(a, b, c);
  const double d2 = cross2(a, b, d);
  const double d3 = cross2(c, d, a);
  const double d4 = cross2(c, d, b);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

// True when direction b->m lies inside the interior wedge of CCW ring vertex b.
bool inside_wedge(const P2& a, const P2& b, const P2& c, const P2& m) {
  const P2 e1{c.x - b.x, c.y - b.y};
  const P2 e2{a.x - b.x, a.y - b.y};
  const P2 d{m.x - b.x, m.y - b.y};
  auto cr = [](const P2& u, const P2& v) { return u.x * v.y - u.y * v.x; };
  if (cr(e1, e2) > 0.0) return cr(e1, d) > 0.0 && cr(d, e2) > 0.0;
  return !(cr(e2, d) >= 0.0 && cr(d, e1) >= 0.0);
}

bool blocked(const std::vector<P2>& pts, const std::vector<std::uint32_t>& ring, const P2& a,
             const P2& b) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const P2& c = pts[ring[i]];
    const P2& d = pts[ring[(i + 1) % ring.size()]];
    if (same_point(c, a) || same_point(c, b) || same_point(d, a) || same_point(d, b)) continue;
    if (segments_cross(a, b, c, d)) return true;
  }
  return false;
}

void bridge_hole(const std::vector<P2>& pts, std::vector<std::uint32_t>& outer,
                 const std::vector<std::uint32_t>& hole,
                 const std::vector<std::vector<std::uint32_t>>& pending) {
  std::size_t m = 0;
  for (std::size_t i = 1; i < hole.size(); ++i) {
    const P2& p = pts[hole[i]];
    const P2& q = pts[hole[m]];
    if (p.x > q.x || (p.x == q.x && p.y < q.y)) m = i;
  }
  const P2& pm = pts[hole[m]];

  std::vector<std::size_t> order(outer.size());
  std::iota(order.begin(), order.end(), 0);
  auto d2 = [&](std::size_t i) {
    const P2& p = pts[outer[i]];
    return (p.x - pm.x) * (p.x - pm.x) + (p.y - pm.y) * (p.y - pm.y);
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d2(a) < d2(b); });

  for (std::size_t c : order) {
    const P2& pc = pts[outer[c]];
    const P2& prev = pts[outer[(c + outer.size() - 1) % outer.size()]];
    const P2& next = pts[outer[(c + 1) % outer.size()]];
    if (!inside_wedge(prev, pc, next, pm)) continue;
    if (blocked(pts, outer, pm, pc)) continue;
    bool hit = false;
    for (const auto& h : pending) {
      if (blocked(pts, h, pm, pc)) {
        hit = true;
        break;
      }
    }
    if (hit) continue;

    std::vector<std::uint32_t> merged(outer.begin(), outer.begin() + static_cast<long>(c) + 1);
    for (std::size_t k = 0; k <= hole.size(); ++k) merged.push_back(hole[(m + k) % hole.size()]);
    merged.push_back(outer[c]);
    merged.insert(merged.end(), outer.begin() + static_cast<long>(c) + 1, outer.end());
    outer = std::move(merged);
    return;
  }
  throw TessellationError("could not bridge hole to outer boundary");
}

bool point_in_triangle(const P2& p, const P2& a, const P2& b, const P2& c) {
  return cross2(a, b, p) >= 0.0 && cross2(b, c, p) >= 0.0 && cross2(c, a, p) >= 0.0;
}

std::vector<Triangle> ear_clip(const std::vector<P2>& pts, const std::vector<std::uint32_t>& poly) {
  const std::size_t n = poly.size();
  std::vector<std::size_t> prev(n);
  std::vector<std::size_t> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    prev[i] = (i + n - 1) % n;
    next[i] = (i + 1) % n;
  }
  auto P = [&](std::size_t i) -> const P2& { return pts[poly[i]]; };

  auto is_ear = [&](std::size_t b) {
    const std::size_t a = prev[b];
    const std::size_t c = next[b];
    if (!(cross2(P(a), P(b), P(c)) > 0.0)) return false;
    for (std::size_t k = next[c]; k != a; k = next[k]) {
      const P2& q = P(k);
      if (same_point(q, P(a)) || same_point(q, P(b)) || same_point(q, P(c))) continue;
      if (point_in_triangle(q, P(a), P(b), P(c))) return false;
    }
    return true;
  };

  std::vector<Triangle> tris;
  std::size_t remaining = n;
  std::size_t i = 0;
  while (remaining > 3) {
    bool clipped = false;
    for (std::size_t step = 0; step < remaining; ++step, i = next[i]) {
      if (is_ear(i)) {
        clipped = true;
        break;
      }
    }
    if (!clipped) {
      // Numerical stalemate: clip the most convex corner.
      double best = 0.0;
      std::size_t pick = n;
      std::size_t k = i;
      for (std::size_t step = 0; step < remaining; ++step, k = next[k]) {
        const double cr = cross2(P(prev[k]), P(k), P(next[k]));
        if (cr > best) {
          best = cr;
          pick = k;
        }
      }
      if (pick == n) throw TessellationError("ear clipping failed on degenerate polygon");
      i = pick;
    }
    tris.push_back({poly[prev[i]], poly[i], poly[next[i]]});
    next[prev[i]] = next[i];
    prev[next[i]] = prev[i];
    i = next[i];
    --remaining;
  }
  if (cross2(P(prev[i]), P(i), P(next[i])) > 0.0) {
    tris.push_back({poly[prev[i]], poly[i], poly[next[i]]});
  }
  return tris;
}

}  // namespace

TriMesh triangulate_planar_face(const PrimitiveFace& face, double chord_tolerance) {
  for (const auto& c : face.curves) {
    if (auto issues = check_primitive(c); !issues.empty()) {
      throw StructuralError(issues.front().field + ": " + issues.front().message);
    }
  }
  const auto loops = split_loops(face);

  TriMesh mesh;
  std::vector<std::vector<std::uint32_t>> rings;
  for (const auto& [begin, end] : loops) {
    std::vector<Vec3> ring;
    for (std::size_t k = begin; k < end; ++k) {
      auto pts = discretize(face.curves[k], chord_tolerance);
      ring.insert(ring.end(), pts.begin() + (ring.empty() ? 0 : 1), pts.end());
    }
    ring.pop_back();
    std::vector<std::uint32_t> ids;
    for (const Vec3& p : ring) {
      if (!mesh.vertices.empty() && !ids.empty() && mesh.vertices.back() == p) continue;
      ids.push_back(static_cast<std::uint32_t>(mesh.vertices.size()));
      mesh.vertices.push_back(p);
    }
    if (ids.size() < 3) throw TessellationError("boundary loop collapses to fewer than 3 points");
    rings.push_back(std::move(ids));
  }

  // Newell vector area of each loop; the largest is the outer boundary.
  std::size_t outer = 0;
  std::vector<Vec3> areas;
  for (const auto& ring : rings) {
    Vec3 n{};
    for (std::size_t i = 0; i < ring.size(); ++i) {
      n += cross(mesh.vertices[ring[i]], mesh.vertices[ring[(i + 1) % ring.size()]]);
    }
    areas.push_back(0.5 * n);
  }
  for (std::size_t r = 1; r < rings.size(); ++r) {
    if (norm(areas[r]) > norm(areas[outer])) outer = r;
  }
  if (!(norm(areas[outer]) > 0.0)) throw TessellationError("outer loop encloses no area");
  const Vec3 normal = normalized(areas[outer]);

  Vec3 origin{};
  for (auto id : rings[outer]) origin += mesh.vertices[id];
  origin = origin / static_cast<double>(rings[outer].size());
  for (const Vec3& p : mesh.vertices) {
    if (std::abs(dot(p - origin, normal)) > kPlanarityTolerance) {
      throw UnsupportedFaceError("non-planar primitive face boundary");
    }
  }

  const auto [xd, yd] = plane_frame(normal);
  std::vector<P2> pts;
  pts.reserve(mesh.vertices.size());
  for (const Vec3& p : mesh.vertices) pts.push_back({dot(p - origin, xd), dot(p - origin, yd)});

  std::vector<std::uint32_t> poly = rings[outer];
  if (signed_area(pts, poly) < 0.0) std::reverse(poly.begin(), poly.end());
  std::vector<std::vector<std::uint32_t>> holes;
  for (std::size_t r = 0; r < rings.size(); ++r) {
    if (r == outer) continue;
    auto h = rings[r];
    if (signed_area(pts, h) > 0.0) std::reverse(h.begin(), h.end());
    holes.push_back(std::move(h));
  }
  auto max_x = [&](const std::vector<std::uint32_t>& ring) {
    double m = -INFINITY;
    for (auto id : ring) m = std::max(m, pts[id].x);
    return m;
  };
  std::stable_sort(holes.begin(), holes.end(),
                   [&](const auto& a, const auto& b) { return max_x(a) > max_x(b); });
  for (std::size_t h = 0; h < holes.size(); ++h) {
    std::vector<std::vector<std::uint32_t>> pending(holes.begin() + static_cast<long>(h), holes.end());
    bridge_hole(pts, poly, holes[h], pending);
  }

  mesh.triangles = ear_clip(pts, poly);
  if (mesh.triangles.empty()) throw TessellationError("planar face produced no triangles");
  return mesh;
}

}  // namespace hcad
