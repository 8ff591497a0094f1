#include "hcad/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <unordered_map>

#include "hcad/kernels.hpp"
#include "hcad/rng.hpp"

namespace hcad {

void TriMesh::append(const TriMesh& other) {
  const auto offset = static_cast<std::uint32_t>(vertices.size());
  vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
  triangles.reserve(triangles.size() + other.triangles.size());
  for (const Triangle& t : other.triangles) {
    triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
  }
}

TriMesh mesh_from_grid(const Grid<Vec3>& samples) {
  if (samples.rows() < 2 || samples.cols() < 2) throw TessellationError("grid needs at least 2x2 samples");
  for (const Vec3& p : samples.values()) {
    if (!is_finite(p)) throw TessellationError("non-finite surface sample");
  }
  TriMesh mesh;
  mesh.vertices = samples.values();
  const auto cols = static_cast<std::uint32_t>(samples.cols());
  auto id = [&](std::size_t i, std::size_t j) { return static_cast<std::uint32_t>(i) * cols + static_cast<std::uint32_t>(j); };
  for (std::size_t i = 0; i + 1 < samples.rows(); ++i) {
    for (std::size_t j = 0; j + 1 < samples.cols(); ++j) {
      const Triangle a{id(i, j), id(i + 1, j), id(i + 1, j + 1)};
      const Triangle b{id(i, j), id(i + 1, j + 1), id(i, j + 1)};
      if (triangle_area(mesh, a) >= kDegenerateTriangleArea) mesh.triangles.push_back(a);
      if (triangle_area(mesh, b) >= kDegenerateTriangleArea) mesh.triangles.push_back(b);
    }
  }
  if (mesh.triangles.empty()) throw TessellationError("surface meshed to zero area");
  return mesh;
}

namespace {

std::vector<double> uniform_params(const ParamRange& r, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = (i + 1 == n) ? r.hi : r.lo + r.width() * i / (n - 1);
  return out;
}

std::vector<double> split_spans(const std::vector<double>& breaks, int pieces) {
  std::vector<double> out;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s];
    const double b = breaks[s + 1];
    for (int k = 0; k < pieces; ++k) out.push_back(a + (b - a) * k / pieces);
  }
  out.push_back(breaks.back());
  return out;
}

std::vector<double> midpoints(const std::vector<double>& params) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < params.size(); ++i) out.push_back(0.5 * (params[i] + params[i + 1]));
  return out;
}

}  // namespace

TriMesh tessellate_surface(const NurbsSurface& surface, int nu, int nv) {
  if (nu < 2 || nv < 2) throw DomainError("tessellation needs nu, nv >= 2");
  try {
    const SurfaceEvaluator eval(surface);
    if (!(eval.u_range().width() > 0.0) || !(eval.v_range().width() > 0.0)) {
      throw TessellationError("zero-width parameter domain");
    }
    const auto us = uniform_params(eval.u_range(), nu);
    const auto vs = uniform_params(eval.v_range(), nv);
    return mesh_from_grid(kernels::parallel::evaluate_grid(eval, us, vs));
  } catch (const TessellationError&) {
    throw;
  } catch (const Error& e) {
    throw TessellationError(e.what());
  }
}

AdaptiveGrid adaptive_grid(const SurfaceEvaluator& eval, double tol) {
  if (!(tol > 0.0)) throw DomainError("chord tolerance must be positive");
  const auto& ub = eval.u_breaks();
  const auto& vb = eval.v_breaks();
  if (ub.size() < 2 || vb.size() < 2) throw TessellationError("zero-width parameter domain");
  const int u_spans = static_cast<int>(ub.size()) - 1;
  const int v_spans = static_cast<int>(vb.size()) - 1;
  int ku = 1;
  int kv = 1;
  for (;;) {
    AdaptiveGrid g{split_spans(ub, ku), split_spans(vb, kv)};
    const auto um = midpoints(g.u);
    const auto vm = midpoints(g.v);
    const auto corners = kernels::parallel::evaluate_grid(eval, g.u, g.v);
    const auto u_mid = kernels::parallel::evaluate_grid(eval, um, g.v);
    const auto v_mid = kernels::parallel::evaluate_grid(eval, g.u, vm);
    const auto centers = kernels::parallel::evaluate_grid(eval, um, vm);

    double dev_u = 0.0;
    double dev_v = 0.0;
    double dev_c = 0.0;
    for (std::size_t i = 0; i < um.size(); ++i) {
      for (std::size_t j = 0; j < g.v.size(); ++j) {
        dev_u = std::max(dev_u, distance(u_mid(i, j), 0.5 * (corners(i, j) + corners(i + 1, j))));
      }
    }
    for (std::size_t i = 0; i < g.u.size(); ++i) {
      for (std::size_t j = 0; j < vm.size(); ++j) {
        dev_v = std::max(dev_v, distance(v_mid(i, j), 0.5 * (corners(i, j) + corners(i, j + 1))));
      }
    }
    for (std::size_t i = 0; i < um.size(); ++i) {
      for (std::size_t j = 0; j < vm.size(); ++j) {
        const Vec3 avg = 0.25 * (corners(i, j) + corners(i + 1, j) + corners(i, j + 1) + corners(i + 1, j + 1));
        dev_c = std::max(dev_c, distance(centers(i, j), avg));
      }
    }
    if (!std::isfinite(dev_u) || !std::isfinite(dev_v) || !std::isfinite(dev_c)) {
      throw TessellationError("non-finite surface sample");
    }
    const bool can_u = 2 * ku * u_spans <= kMaxSegmentsPerDirection;
    const bool can_v = 2 * kv * v_spans <= kMaxSegmentsPerDirection;
    bool refine_u = dev_u > tol && can_u;
    bool refine_v = dev_v > tol && can_v;
    if (!refine_u && !refine_v && dev_c > tol) {
      refine_u = can_u;
      refine_v = can_v;
    }
    if (!refine_u && !refine_v) return g;
    if (refine_u) ku *= 2;
    if (refine_v) kv *= 2;
  }
}

TriMesh tessellate_face(const FaceRecord& face, double chord_tolerance) {
  try {
    if (const auto* s = face.nurbs()) {
      const SurfaceEvaluator eval(*s);
      const auto g = adaptive_grid(eval, chord_tolerance);
      return mesh_from_grid(kernels::serial::evaluate_grid(eval, g.u, g.v));
    }
    return triangulate_planar_face(*face.primitive(), chord_tolerance);
  } catch (const TessellationError&) {
    throw;
  } catch (const Error& e) {
    throw TessellationError(e.what());
  }
}

double document_scale(const SolidDocument& doc) {
  Vec3 lo{INFINITY, INFINITY, INFINITY};
  Vec3 hi{-INFINITY, -INFINITY, -INFINITY};
  auto add = [&](const Vec3& p) {
    if (!is_finite(p)) return;
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  };
  auto add_ball = [&](const Vec3& c, double r) {
    add(c - Vec3{r, r, r});
    add(c + Vec3{r, r, r});
  };
  for (const auto& face : doc.faces) {
    if (const auto* s = face.nurbs()) {
      for (const Vec3& p : s->poles.values()) add(p);
      continue;
    }
    for (const auto& curve : face.primitive()->curves) {
      if (const auto* l = std::get_if<LineSegment>(&curve)) {
        add(l->start);
        add(l->end);
      } else if (const auto* c = std::get_if<CircleArc>(&curve)) {
        add_ball(c->center, c->radius);
      } else if (const auto* e = std::get_if<EllipseArc>(&curve)) {
        add_ball(e->center, e->major_radius);
      } else if (const auto* b = std::get_if<BezierCurve>(&curve)) {
        for (const Vec3& p : b->poles) add(p);
      } else if (const auto* bs = std::get_if<BsplineCurvePrimitive>(&curve)) {
        for (const Vec3& p : bs->curve.poles) add(p);
      }
    }
  }
  double longest = 0.0;
  for (int a = 0; a < 3; ++a) {
    if (hi[a] >= lo[a]) longest = std::max(longest, hi[a] - lo[a]);
  }
  return (std::isfinite(longest) && longest > 0.0) ? 0.5 * longest : 1.0;
}

TriMesh tessellate_document(const SolidDocument& doc, double chord_tolerance) {
  if (doc.faces.empty()) throw TessellationError("document has no faces");
  if (!(chord_tolerance > 0.0)) throw DomainError("chord tolerance must be positive");
  const double scale = document_scale(doc);
  const long n = static_cast<long>(doc.faces.size());
  std::vector<TriMesh> meshes(doc.faces.size());
  std::vector<std::string> errors(doc.faces.size());
#pragma omp parallel for schedule(dynamic)
  for (long f = 0; f < n; ++f) {
    try {
      meshes[f] = tessellate_face(doc.faces[f], chord_tolerance * scale);
    } catch (const std::exception& e) {
      errors[f] = e.what();
      if (errors[f].empty()) errors[f] = "tessellation failure";
    }
  }
  std::vector<int> failing;
  std::ostringstream msg;
  msg << "tessellation failure";
  for (long f = 0; f < n; ++f) {
    if (errors[f].empty()) continue;
    failing.push_back(static_cast<int>(f));
    msg << (failing.size() == 1 ? ": " : "; ") << "faces[" << f << "]: " << errors[f];
  }
  if (!failing.empty()) throw DocumentTessellationError(failing, msg.str());

  TriMesh all;
  for (const auto& m : meshes) all.append(m);
  return weld_vertices(all, kWeldTolerance * scale);
}

namespace {

struct CellKey {
  long x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.x) * 73856093u;
    h ^= static_cast<std::size_t>(k.y) * 19349663u;
    h ^= static_cast<std::size_t>(k.z) * 83492791u;
    return h;
  }
};

}  // namespace

TriMesh weld_vertices(const TriMesh& mesh, double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("weld tolerance must be positive");
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellHash> cells;
  TriMesh out;
  std::vector<std::uint32_t> remap(mesh.vertices.size());
  const double tol2 = tolerance * tolerance;
  auto key_of = [&](const Vec3& p) {
    return CellKey{static_cast<long>(std::floor(p.x / tolerance)), static_cast<long>(std::floor(p.y / tolerance)),
                   static_cast<long>(std::floor(p.z / tolerance))};
  };
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& p = mesh.vertices[i];
    const CellKey k = key_of(p);
    std::uint32_t found = UINT32_MAX;
    for (long dx = -1; dx <= 1 && found == UINT32_MAX; ++dx) {
      for (long dy = -1; dy <= 1 && found == UINT32_MAX; ++dy) {
        for (long dz = -1; dz <= 1 && found == UINT32_MAX; ++dz) {
          auto it = cells.find({k.x + dx, k.y + dy, k.z + dz});
          if (it == cells.end()) continue;
          for (std::uint32_t rep : it->second) {
            if (squared_distance(out.vertices[rep], p) <= tol2) {
              found = rep;
              break;
            }
          }
        }
      }
    }
    if (found == UINT32_MAX) {
      found = static_cast<std::uint32_t>(out.vertices.size());
      out.vertices.push_back(p);
      cells[k].push_back(found);
    }
    remap[i] = found;
  }
  for (const Triangle& t : mesh.triangles) {
    const Triangle r{remap[t[0]], remap[t[1]], remap[t[2]]};
    if (r[0] == r[1] || r[1] == r[2] || r[0] == r[2]) continue;
    out.triangles.push_back(r);
  }
  return out;
}

namespace {

std::pair<Vec3, Vec3> bounds(const std::vector<Vec3>& pts) {
  Vec3 lo = pts.front();
  Vec3 hi = pts.front();
  for (const Vec3& p : pts) {
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  return {lo, hi};
}

}  // namespace

std::pair<TriMesh, BoxTransform> normalize_to_box(const TriMesh& mesh) {
  if (mesh.vertices.empty()) throw DegenerateInputError("cannot normalize an empty mesh");
  const auto [lo, hi] = bounds(mesh.vertices);
  const double longest = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
  if (!(longest > 0.0) || !std::isfinite(longest)) throw DegenerateInputError("mesh has zero extent");
  BoxTransform xf;
  xf.scale = 2.0 / longest;
  xf.translation = -xf.scale * (0.5 * (lo + hi));
  TriMesh out = mesh;
  for (Vec3& p : out.vertices) p = xf.apply(p);
  return {std::move(out), xf};
}

PointCloud sample_surface_points(const TriMesh& mesh, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample count must be >= 1");
  if (mesh.triangles.empty()) throw DegenerateInputError("cannot sample an empty mesh");
  std::vector<double> cdf(mesh.triangles.size());
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    total += triangle_area(mesh, mesh.triangles[t]);
    cdf[t] = total;
  }
  if (!(total > 0.0) || !std::isfinite(total)) throw DegenerateInputError("mesh has zero total area");

  std::mt19937_64 rng(seed);
  PointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double pick = uniform01(rng) * total;
    std::size_t t = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), pick) - cdf.begin());
    t = std::min(t, cdf.size() - 1);
    const Triangle& tri = mesh.triangles[t];
    const double s = std::sqrt(uniform01(rng));
    const double r = uniform01(rng);
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    cloud.points.push_back((1.0 - s) * a + (s * (1.0 - r)) * b + (s * r) * c);
  }
  return cloud;
}

PointCloud normalize_to_unit_cube(const PointCloud& cloud) {
  if (cloud.empty()) throw DegenerateInputError("cannot normalize an empty cloud");
  const auto [lo, hi] = bounds(cloud.points);
  const double longest = std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
  if (!(longest > 0.0) || !std::isfinite(longest)) throw DegenerateInputError("cloud has zero extent");
  const Vec3 center = 0.5 * (lo + hi);
  const Vec3 half{0.5, 0.5, 0.5};
  PointCloud out;
  out.points.reserve(cloud.size());
  for (const Vec3& p : cloud.points) out.points.push_back((p - center) / longest + half);
  return out;
}

PointCloud sample_points(const TriMesh& mesh, std::size_t n, std::uint64_t seed) {
  return normalize_to_unit_cube(sample_surface_points(mesh, n, seed));
}

}  // namespace hcad
