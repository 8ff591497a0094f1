#include "fixtures.hpp"

#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <numbers>

#include "hcad/nurbs.hpp"
#include "hcad/primitives.hpp"

namespace hcad::fixtures {

namespace {

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr std::array<double, 9> kCx = {1, 1, 0, -1, -1, -1, 0, 1, 1};
constexpr std::array<double, 9> kCy = {0, 1, 1, 1, 0, -1, -1, -1, 0};
constexpr std::array<double, 9> kCw = {1, kHalfSqrt2, 1, kHalfSqrt2, 1, kHalfSqrt2, 1, kHalfSqrt2, 1};

const KnotVector kCircleKnots{{0, 1, 2, 3, 4}, {3, 2, 2, 2, 3}};

std::array<std::array<int, 3>, 4> exposed_quad(const Cell& c, int axis, int sign) {
  const int b = (axis + 1) % 3;
  const int d = (axis + 2) % 3;
  std::array<int, 3> base = c;
  if (sign > 0) base[axis] += 1;
  auto shift = [&](int db, int dd) {
    std::array<int, 3> p = base;
    p[b] += db;
    p[d] += dd;
    return p;
  };
  std::array<std::array<int, 3>, 4> q = {shift(0, 0), shift(1, 0), shift(1, 1), shift(0, 1)};
  if (sign < 0) std::swap(q[1], q[3]);
  return q;
}

template <typename Fn>
void for_each_exposed(const std::set<Cell>& cells, Fn&& fn) {
  for (const Cell& c : cells) {
    for (int axis = 0; axis < 3; ++axis) {
      for (int sign : {-1, 1}) {
        Cell n = c;
        n[axis] += sign;
        if (!cells.count(n)) fn(exposed_quad(c, axis, sign));
      }
    }
  }
}

Vec3 lattice(const std::array<int, 3>& p, double size) { return {p[0] * size, p[1] * size, p[2] * size}; }

NurbsSurface bilinear(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  NurbsSurface s;
  s.poles = Grid<Vec3>(2, 2);
  s.poles(0, 0) = a;
  s.poles(1, 0) = b;
  s.poles(1, 1) = c;
  s.poles(0, 1) = d;
  s.weights = Grid<double>(2, 2, 1.0);
  s.u_knots = {{0, 1}, {2, 2}};
  s.v_knots = {{0, 1}, {2, 2}};
  return s;
}

// Surface of revolution about z of a rational profile given in (rho, z).
NurbsSurface revolve(const std::vector<std::pair<double, double>>& profile, const std::vector<double>& weights,
                     const KnotVector& profile_knots, int profile_degree) {
  NurbsSurface s;
  s.poles = Grid<Vec3>(9, profile.size());
  s.weights = Grid<double>(9, profile.size());
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < profile.size(); ++j) {
      const auto [rho, z] = profile[j];
      s.poles(i, j) = {rho * kCx[i], rho * kCy[i], z};
      s.weights(i, j) = kCw[i] * weights[j];
    }
  }
  s.u_knots = kCircleKnots;
  s.u_degree = 2;
  s.v_knots = profile_knots;
  s.v_degree = profile_degree;
  return s;
}

PrimitiveCurve circle(double radius, double z) {
  CircleArc c;
  c.center = {0, 0, z};
  c.radius = radius;
  return c;
}

double jitter(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

Vec3 random_point(std::mt19937_64& rng) { return {jitter(rng, -10, 10), jitter(rng, -10, 10), jitter(rng, -10, 10)}; }

KnotVector random_knots(std::mt19937_64& rng, int degree, int interior) {
  KnotVector kv;
  double t = jitter(rng, -2, 2);
  kv.knots.push_back(t);
  kv.mults.push_back(degree + 1);
  for (int k = 0; k < interior; ++k) {
    t += jitter(rng, 0.05, 1.5);
    kv.knots.push_back(t);
    kv.mults.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(degree)));
  }
  t += jitter(rng, 0.05, 1.5);
  kv.knots.push_back(t);
  kv.mults.push_back(degree + 1);
  return kv;
}

KnotVector random_periodic_knots(std::mt19937_64& rng, int degree, int spans) {
  KnotVector kv;
  double t = 0.0;
  for (int k = 0; k <= spans; ++k) {
    kv.knots.push_back(t);
    kv.mults.push_back(1);
    t += jitter(rng, 0.25, 1.0);
  }
  (void)degree;
  return kv;
}

double random_weight(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0:
      return kHalfSqrt2;
    case 1:
      return jitter(rng, 0.2, 3.0);
    default:
      return 1.0;
  }
}

NurbsSurface random_surface(std::mt19937_64& rng) {
  for (;;) {
    NurbsSurface s;
    s.u_degree = 1 + static_cast<int>(rng() % 3);
    s.v_degree = 1 + static_cast<int>(rng() % 3);
    s.u_periodic = rng() % 5 == 0;
    s.v_periodic = rng() % 7 == 0;
    s.u_knots = s.u_periodic ? random_periodic_knots(rng, s.u_degree, s.u_degree + 2 + static_cast<int>(rng() % 3))
                             : random_knots(rng, s.u_degree, static_cast<int>(rng() % 4));
    s.v_knots = s.v_periodic ? random_periodic_knots(rng, s.v_degree, s.v_degree + 2 + static_cast<int>(rng() % 3))
                             : random_knots(rng, s.v_degree, static_cast<int>(rng() % 4));
    const int nu = required_pole_count(s.u_knots, s.u_degree, s.u_periodic);
    const int nv = required_pole_count(s.v_knots, s.v_degree, s.v_periodic);
    if (nu < 1 || nv < 1) continue;
    s.poles = Grid<Vec3>(nu, nv);
    s.weights = Grid<double>(nu, nv, 1.0);
    const bool uniform_weights = rng() % 2 == 0;
    for (auto& p : s.poles.values()) p = random_point(rng);
    if (!uniform_weights) {
      for (auto& w : s.weights.values()) w = random_weight(rng);
    }
    if (check_surface(s).empty()) return s;
  }
}

PrimitiveFace random_primitive_face(std::mt19937_64& rng) {
  PrimitiveFace f;
  switch (rng() % 4) {
    case 0: {  // polygon in a random plane z = c
      const int n = 3 + static_cast<int>(rng() % 5);
      const double z = jitter(rng, -5, 5);
      const double r = jitter(rng, 1, 5);
      std::vector<Vec3> pts;
      for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n;
        pts.push_back({r * std::cos(a), r * std::sin(a), z});
      }
      for (int k = 0; k < n; ++k) f.curves.push_back(LineSegment{pts[k], pts[(k + 1) % n]});
      break;
    }
    case 1: {  // disk with random normal, sometimes an ellipse
      std::normal_distribution<double> g;
      Vec3 n{g(rng), g(rng), g(rng)};
      n = normalized(n);
      if (rng() % 2) {
        CircleArc c;
        c.center = random_point(rng);
        c.normal = n;
        c.radius = jitter(rng, 0.1, 4);
        f.curves.push_back(c);
      } else {
        EllipseArc e;
        e.center = random_point(rng);
        e.normal = n;
        e.major_radius = jitter(rng, 2, 4);
        e.minor_radius = jitter(rng, 0.5, 2);
        f.curves.push_back(e);
      }
      break;
    }
    case 2: {  // bezier bulge closed by a line
      BezierCurve b;
      b.degree = 2 + static_cast<int>(rng() % 3);
      for (int k = 0; k <= b.degree; ++k) b.poles.push_back({static_cast<double>(k), jitter(rng, 0.5, 3), 1.25});
      b.poles.front().y = 0.0;
      b.poles.back().y = 0.0;
      b.first = 0.0;
      b.last = jitter(rng, 0.5, 2.0);
      f.curves.push_back(b);
      f.curves.push_back(LineSegment{b.poles.back(), b.poles.front()});
      break;
    }
    default: {  // clamped B-spline arch closed by a line
      BsplineCurvePrimitive b;
      NurbsCurve& c = b.curve;
      c.degree = 2 + static_cast<int>(rng() % 2);
      c.knot_vector = random_knots(rng, c.degree, 1 + static_cast<int>(rng() % 3));
      const int n = required_pole_count(c.knot_vector, c.degree, false);
      for (int k = 0; k < n; ++k) c.poles.push_back({static_cast<double>(k), k == 0 || k == n - 1 ? 0.0 : jitter(rng, 1, 2), 0.0});
      c.weights.assign(static_cast<std::size_t>(n), 1.0);
      if (rng() % 2) c.weights[1] = 0.5;
      c.first = c.knot_vector.knots.front();
      c.last = c.knot_vector.knots.back();
      f.curves.push_back(b);
      f.curves.push_back(LineSegment{c.poles.back(), c.poles.front()});
      break;
    }
  }
  return f;
}

nlohmann::json point_json(const Vec3& p) { return {p.x, p.y, p.z}; }

}  // namespace

SolidDocument voxel_document(const std::set<Cell>& cells, double size) {
  SolidDocument doc;
  for_each_exposed(cells, [&](const auto& q) {
    doc.faces.push_back(
        {bilinear(lattice(q[0], size), lattice(q[1], size), lattice(q[2], size), lattice(q[3], size))});
  });
  return doc;
}

TriMesh voxel_mesh(const std::set<Cell>& cells) {
  TriMesh m;
  std::map<std::array<int, 3>, std::uint32_t> ids;
  auto id = [&](const std::array<int, 3>& p) {
    auto [it, inserted] = ids.emplace(p, static_cast<std::uint32_t>(m.vertices.size()));
    if (inserted) m.vertices.push_back(lattice(p, 1.0));
    return it->second;
  };
  for_each_exposed(cells, [&](const auto& q) {
    const std::uint32_t a = id(q[0]), b = id(q[1]), c = id(q[2]), d = id(q[3]);
    m.triangles.push_back({a, b, c});
    m.triangles.push_back({a, c, d});
  });
  return m;
}

SolidDocument cube_document(double size, const Vec3& origin) {
  SolidDocument doc = voxel_document({{0, 0, 0}}, size);
  for (auto& f : doc.faces) {
    for (auto& p : std::get<NurbsSurface>(f.payload).poles.values()) p += origin;
  }
  doc.name = "cube";
  return doc;
}

std::set<Cell> ring_cells() {
  std::set<Cell> cells;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x != 1 || y != 1) cells.insert({x, y, 0});
    }
  }
  return cells;
}

std::set<Cell> two_hole_cells() {
  std::set<Cell> cells;
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (y == 1 && (x == 1 || x == 3)) continue;
      cells.insert({x, y, 0});
    }
  }
  return cells;
}

NurbsCurve unit_circle() {
  NurbsCurve c;
  c.degree = 2;
  for (std::size_t i = 0; i < 9; ++i) {
    c.poles.push_back({kCx[i], kCy[i], 0.0});
    c.weights.push_back(kCw[i]);
  }
  c.knot_vector = kCircleKnots;
  c.first = 0.0;
  c.last = 4.0;
  return c;
}

SolidDocument cylinder_document(double radius, double height) {
  SolidDocument doc;
  doc.name = "cylinder";
  doc.faces.push_back({revolve({{radius, 0.0}, {radius, height}}, {1, 1}, {{0, 1}, {2, 2}}, 1)});
  doc.faces.push_back({PrimitiveFace{{circle(radius, 0.0)}}});
  doc.faces.push_back({PrimitiveFace{{circle(radius, height)}}});
  return doc;
}

SolidDocument sphere_document(double r) {
  SolidDocument doc;
  doc.name = "sphere";
  doc.faces.push_back({revolve({{0, -r}, {r, -r}, {r, 0}, {r, r}, {0, r}}, {1, kHalfSqrt2, 1, kHalfSqrt2, 1},
                               {{0, 1, 2}, {3, 2, 3}}, 2)});
  return doc;
}

SolidDocument torus_document(double major, double minor) {
  std::vector<std::pair<double, double>> profile;
  std::vector<double> w;
  for (std::size_t j = 0; j < 9; ++j) {
    profile.emplace_back(major + minor * kCx[j], minor * kCy[j]);
    w.push_back(kCw[j]);
  }
  SolidDocument doc;
  doc.name = "torus";
  doc.faces.push_back({revolve(profile, w, kCircleKnots, 2)});
  return doc;
}

SolidDocument washer_document(double outer, double inner, double height) {
  SolidDocument doc;
  doc.name = "washer";
  doc.faces.push_back({revolve({{outer, 0.0}, {outer, height}}, {1, 1}, {{0, 1}, {2, 2}}, 1)});
  doc.faces.push_back({revolve({{inner, 0.0}, {inner, height}}, {1, 1}, {{0, 1}, {2, 2}}, 1)});
  doc.faces.push_back({PrimitiveFace{{circle(outer, 0.0), circle(inner, 0.0)}}});
  doc.faces.push_back({PrimitiveFace{{circle(outer, height), circle(inner, height)}}});
  return doc;
}

SolidDocument open_patch_document() {
  SolidDocument doc;
  doc.faces.push_back({bilinear({0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0})});
  return doc;
}

PrimitiveFace square_with_hole(double outer, double inner) {
  PrimitiveFace f;
  auto square = [&](double h, bool ccw) {
    std::vector<Vec3> p = {{-h, -h, 0}, {h, -h, 0}, {h, h, 0}, {-h, h, 0}};
    if (!ccw) std::reverse(p.begin(), p.end());
    for (std::size_t k = 0; k < 4; ++k) f.curves.push_back(LineSegment{p[k], p[(k + 1) % 4]});
  };
  square(outer / 2, true);
  square(inner / 2, false);
  return f;
}

TriMesh torus_mesh(double major, double minor, int nu, int nv) {
  TriMesh m;
  for (int i = 0; i < nu; ++i) {
    const double a = 2.0 * std::numbers::pi * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double b = 2.0 * std::numbers::pi * j / nv;
      const double rho = major + minor * std::cos(b);
      m.vertices.push_back({rho * std::cos(a), rho * std::sin(a), minor * std::sin(b)});
    }
  }
  auto id = [&](int i, int j) { return static_cast<std::uint32_t>((i % nu) * nv + (j % nv)); };
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return m;
}

SolidDocument random_document(std::mt19937_64& rng) {
  SolidDocument doc;
  if (rng() % 2) doc.name = "part_" + std::to_string(rng() % 100000);
  const int faces = 1 + static_cast<int>(rng() % 4);
  for (int f = 0; f < faces; ++f) {
    if (rng() % 3 == 0) {
      doc.faces.push_back({random_primitive_face(rng)});
    } else {
      doc.faces.push_back({random_surface(rng)});
    }
  }
  return doc;
}

std::string to_loose_json(const SolidDocument& doc) {
  nlohmann::json j;
  if (doc.name) j["name"] = *doc.name;
  j["faces"] = nlohmann::json::array();
  for (const auto& face : doc.faces) {
    nlohmann::json f;
    if (const auto* s = face.nurbs()) {
      f["type"] = "nurbs";
      for (std::size_t i = 0; i < s->poles.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        nlohmann::json wrow = nlohmann::json::array();
        for (std::size_t k = 0; k < s->poles.cols(); ++k) {
          row.push_back(point_json(s->poles(i, k)));
          wrow.push_back(s->weights(i, k));
        }
        f["poles"].push_back(row);
        f["weights"].push_back(wrow);
      }
      f["u_knots"] = s->u_knots.knots;
      f["v_knots"] = s->v_knots.knots;
      f["u_mults"] = s->u_knots.mults;
      f["v_mults"] = s->v_knots.mults;
      f["u_degree"] = s->u_degree;
      f["v_degree"] = s->v_degree;
      if (s->u_periodic) f["u_periodic"] = true;
      if (s->v_periodic) f["v_periodic"] = true;
    } else {
      f["type"] = "primitive";
      f["curves"] = nlohmann::json::array();
      for (const auto& curve : face.primitive()->curves) {
        nlohmann::json c;
        if (const auto* l = std::get_if<LineSegment>(&curve)) {
          c = {{"type", "line"}, {"start", point_json(l->start)}, {"end", point_json(l->end)}};
        } else if (const auto* a = std::get_if<CircleArc>(&curve)) {
          c = {{"type", "circle"}, {"center", point_json(a->center)}, {"normal", point_json(a->normal)},
               {"radius", a->radius}, {"first", a->first}, {"last", a->last}};
        } else if (const auto* e = std::get_if<EllipseArc>(&curve)) {
          c = {{"type", "ellipse"},          {"center", point_json(e->center)},
               {"normal", point_json(e->normal)}, {"major_radius", e->major_radius},
               {"minor_radius", e->minor_radius}, {"first", e->first},
               {"last", e->last}};
        } else if (const auto* b = std::get_if<BezierCurve>(&curve)) {
          c = {{"type", "bezier"}, {"degree", b->degree}, {"first", b->first}, {"last", b->last}};
          for (const auto& p : b->poles) c["poles"].push_back(point_json(p));
        } else {
          const NurbsCurve& n = std::get<BsplineCurvePrimitive>(curve).curve;
          c = {{"type", "bspline"},       {"degree", n.degree}, {"knots", n.knot_vector.knots},
               {"mults", n.knot_vector.mults}, {"weights", n.weights},  {"is_periodic", n.is_periodic},
               {"first", n.first},            {"last", n.last}};
          for (const auto& p : n.poles) c["poles"].push_back(point_json(p));
        }
        f["curves"].push_back(c);
      }
    }
    j["faces"].push_back(f);
  }
  return j.dump();
}

}  // namespace hcad::fixtures
