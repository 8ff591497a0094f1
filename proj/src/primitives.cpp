#include "hcad/primitives.hpp"

#include <algorithm>
#include <cmath>

#include "hcad/errors.hpp"

namespace hcad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleSlack = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool unit_length(const Vec3& n) { return std::abs(norm(n) - 1.0) <= 1e-9; }

void check_arc_range(double first, double last, std::vector<StructureIssue>& issues) {
  if (!std::isfinite(first) || !std::isfinite(last) || !(first < last)) {
    issues.push_back({"first", "arc range must satisfy first < last"});
  } else if (last > first + kTwoPi + kAngleSlack) {
    issues.push_back({"last", "arc sweep exceeds a full turn"});
  }
}

double checked(double t, const ParamRange& r) {
  const double tol = 1e-12 * std::max({1.0, std::abs(r.lo), std::abs(r.hi)});
  if (!std::isfinite(t) || t < r.lo - tol || t > r.hi + tol) {
    throw DomainError("primitive parameter outside [first, last]");
  }
  return std::clamp(t, r.lo, r.hi);
}

Vec3 conic_point(const Vec3& center, const Vec3& normal, double a, double b, double t) {
  const auto [xd, yd] = plane_frame(normal);
  return center + (a * std::cos(t)) * xd + (b * std::sin(t)) * yd;
}

// Piecewise rational quadratic through an elliptic arc (circle when a == b).
NurbsCurve conic_to_nurbs(const Vec3& center, const Vec3& normal, double a, double b,
                          double first, double last) {
  const auto [xd, yd] = plane_frame(normal);
  const double sweep = last - first;
  const int narcs = std::clamp(static_cast<int>(std::ceil(sweep / (kTwoPi / 4.0) - 1e-12)), 1, 4);
  const double step = sweep / narcs;
  const double half = 0.5 * step;
  const double w_mid = std::cos(half);
  auto at = [&](double angle, double scale) {
    return center + (a * scale * std::cos(angle)) * xd + (b * scale * std::sin(angle)) * yd;
  };

  NurbsCurve c;
  c.degree = 2;
  c.first = first;
  c.last = last;
  c.poles.push_back(at(first, 1.0));
  c.weights.push_back(1.0);
  c.knot_vector.knots.push_back(first);
  c.knot_vector.mults.push_back(3);
  for (int k = 0; k < narcs; ++k) {
    const double a0 = first + k * step;
    const double a1 = (k + 1 == narcs) ? last : first + (k + 1) * step;
    c.poles.push_back(at(a0 + half, 1.0 / w_mid));
    c.weights.push_back(w_mid);
    c.poles.push_back(at(a1, 1.0));
    c.weights.push_back(1.0);
    c.knot_vector.knots.push_back(a1);
    c.knot_vector.mults.push_back(k + 1 == narcs ? 3 : 2);
  }
  return c;
}

double conic_nurbs_parameter(double first, double last, double t) {
  const double sweep = last - first;
  const int narcs = std::clamp(static_cast<int>(std::ceil(sweep / (kTwoPi / 4.0) - 1e-12)), 1, 4);
  const double step = sweep / narcs;
  const int k = std::clamp(static_cast<int>(std::floor((t - first) / step)), 0, narcs - 1);
  const double a0 = first + k * step;
  const double half = 0.5 * step;
  // The symmetric rational quadratic arc is linear in tan(angle / 2) about its midpoint.
  const double s = 0.5 * (std::tan(0.5 * (t - (a0 + half))) / std::tan(0.5 * half) + 1.0);
  return a0 + s * step;
}

Vec3 de_casteljau(std::vector<Vec3> pts, double s) {
  for (std::size_t r = 1; r < pts.size(); ++r) {
    for (std::size_t i = 0; i + r < pts.size(); ++i) pts[i] = (1.0 - s) * pts[i] + s * pts[i + 1];
  }
  return pts.front();
}

}  // namespace

std::pair<Vec3, Vec3> plane_frame(const Vec3& normal) {
  const Vec3 n = normalized(normal);
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(n[i]) < std::abs(n[axis])) axis = i;
  }
  Vec3 ref{};
  ref[axis] = 1.0;
  const Vec3 x = normalized(ref - dot(ref, n) * n);
  return {x, cross(n, x)};
}

std::vector<StructureIssue> check_primitive(const PrimitiveCurve& curve) {
  std::vector<StructureIssue> issues;
  std::visit(
      overloaded{
          [&](const LineSegment& l) {
            if (!is_finite(l.start) || !is_finite(l.end)) {
              issues.push_back({"start", "non-finite coordinate"});
            } else if (l.start == l.end) {
              issues.push_back({"end", "line start and end coincide"});
            }
          },
          [&](const CircleArc& c) {
            if (!is_finite(c.center)) issues.push_back({"center", "non-finite coordinate"});
            if (!is_finite(c.normal) || !unit_length(c.normal)) {
              issues.push_back({"normal", "normal must be a unit vector"});
            }
            if (!std::isfinite(c.radius) || !(c.radius > 0.0)) {
              issues.push_back({"radius", "radius must be positive"});
            }
            check_arc_range(c.first, c.last, issues);
          },
          [&](const EllipseArc& e) {
            if (!is_finite(e.center)) issues.push_back({"center", "non-finite coordinate"});
            if (!is_finite(e.normal) || !unit_length(e.normal)) {
              issues.push_back({"normal", "normal must be a unit vector"});
            }
            if (!std::isfinite(e.minor_radius) || !(e.minor_radius > 0.0)) {
              issues.push_back({"minor_radius", "radius must be positive"});
            }
            if (!std::isfinite(e.major_radius) || !(e.major_radius >= e.minor_radius)) {
              issues.push_back({"major_radius", "major radius must be >= minor radius"});
            }
            check_arc_range(e.first, e.last, issues);
          },
          [&](const BezierCurve& b) {
            if (b.degree < 1) {
              issues.push_back({"degree", "degree must be >= 1"});
            } else if (b.poles.size() != static_cast<std::size_t>(b.degree) + 1) {
              issues.push_back({"poles", "bezier needs degree + 1 poles"});
            }
            if (std::any_of(b.poles.begin(), b.poles.end(), [](const Vec3& p) { return !is_finite(p); })) {
              issues.push_back({"poles", "non-finite coordinate"});
            }
            if (!std::isfinite(b.first) || !std::isfinite(b.last) || !(b.first < b.last)) {
              issues.push_back({"first", "parameter range must satisfy first < last"});
            }
          },
          [&](const BsplineCurvePrimitive& b) { issues = check_curve(b.curve); },
      },
      curve);
  return issues;
}

ParamRange parameter_range(const PrimitiveCurve& curve) {
  return std::visit(overloaded{
                        [](const LineSegment&) { return ParamRange{0.0, 1.0}; },
                        [](const CircleArc& c) { return ParamRange{c.first, c.last}; },
                        [](const EllipseArc& e) { return ParamRange{e.first, e.last}; },
                        [](const BezierCurve& b) { return ParamRange{b.first, b.last}; },
                        [](const BsplineCurvePrimitive& b) { return ParamRange{b.curve.first, b.curve.last}; },
                    },
                    curve);
}

Vec3 primitive_point(const PrimitiveCurve& curve, double t) {
  t = checked(t, parameter_range(curve));
  return std::visit(overloaded{
                        [&](const LineSegment& l) { return l.start + t * (l.end - l.start); },
                        [&](const CircleArc& c) { return conic_point(c.center, c.normal, c.radius, c.radius, t); },
                        [&](const EllipseArc& e) {
                          return conic_point(e.center, e.normal, e.major_radius, e.minor_radius, t);
                        },
                        [&](const BezierCurve& b) { return de_casteljau(b.poles, (t - b.first) / (b.last - b.first)); },
                        [&](const BsplineCurvePrimitive& b) { return curve_point(b.curve, t); },
                    },
                    curve);
}

Vec3 start_point(const PrimitiveCurve& curve) { return primitive_point(curve, parameter_range(curve).lo); }
Vec3 end_point(const PrimitiveCurve& curve) { return primitive_point(curve, parameter_range(curve).hi); }

NurbsCurve primitive_to_nurbs(const PrimitiveCurve& curve) {
  if (auto issues = check_primitive(curve); !issues.empty()) {
    throw StructuralError(issues.front().field + ": " + issues.front().message);
  }
  return std::visit(
      overloaded{
          [](const LineSegment& l) {
            NurbsCurve c;
            c.degree = 1;
            c.poles = {l.start, l.end};
            c.weights = {1.0, 1.0};
            c.knot_vector = {{0.0, 1.0}, {2, 2}};
            return c;
          },
          [](const CircleArc& a) {
            return conic_to_nurbs(a.center, a.normal, a.radius, a.radius, a.first, a.last);
          },
          [](const EllipseArc& e) {
            return conic_to_nurbs(e.center, e.normal, e.major_radius, e.minor_radius, e.first, e.last);
          },
          [](const BezierCurve& b) {
            NurbsCurve c;
            c.degree = b.degree;
            c.poles = b.poles;
            c.weights.assign(b.poles.size(), 1.0);
            c.knot_vector = {{b.first, b.last}, {b.degree + 1, b.degree + 1}};
            c.first = b.first;
            c.last = b.last;
            return c;
          },
          [](const BsplineCurvePrimitive& b) { return b.curve; },
      },
      curve);
}

double nurbs_parameter(const PrimitiveCurve& curve, double t) {
  t = checked(t, parameter_range(curve));
  if (const auto* c = std::get_if<CircleArc>(&curve)) return conic_nurbs_parameter(c->first, c->last, t);
  if (const auto* e = std::get_if<EllipseArc>(&curve)) return conic_nurbs_parameter(e->first, e->last, t);
  return t;
}

std::vector<Vec3> discretize(const PrimitiveCurve& curve, double chord_tolerance) {
  if (!(chord_tolerance > 0.0)) throw DomainError("chord tolerance must be positive");
  if (const auto* l = std::get_if<LineSegment>(&curve)) return {l->start, l->end};

  // Same sampling rule as surface tessellation: every knot span is cut into
  // k equal parameter pieces, k doubling until the chord-midpoint deviation
  // is within tolerance. A circle edge shared with a NURBS face therefore gets
  // the same vertices on both sides.
  const NurbsCurve nc = primitive_to_nurbs(curve);
  const CurveEvaluator eval(nc);
  const ParamRange r = eval.range();
  std::vector<double> breaks{r.lo};
  for (double k : nc.knot_vector.knots) {
    if (k > r.lo && k < r.hi) breaks.push_back(k);
  }
  breaks.push_back(r.hi);
  const int spans = static_cast<int>(breaks.size()) - 1;

  for (int pieces = 1;; pieces *= 2) {
    std::vector<double> params;
    for (int s = 0; s < spans; ++s) {
      for (int k = 0; k < pieces; ++k) params.push_back(breaks[s] + (breaks[s + 1] - breaks[s]) * k / pieces);
    }
    params.push_back(breaks.back());
    std::vector<Vec3> pts;
    pts.reserve(params.size());
    for (double t : params) pts.push_back(eval.point(t));
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < params.size(); ++i) {
      const Vec3 mid = eval.point(0.5 * (params[i] + params[i + 1]));
      worst = std::max(worst, distance(mid, 0.5 * (pts[i] + pts[i + 1])));
    }
    if (!std::isfinite(worst)) throw TessellationError("non-finite curve sample");
    if (worst <= chord_tolerance || 2 * pieces * spans > kMaxCurveSegments) return pts;
  }
}

std::vector<std::pair<std::size_t, std::size_t>> split_loops(const PrimitiveFace& face) {
  if (face.curves.empty()) throw StructuralError("primitive face has no curves");
  std::vector<std::pair<std::size_t, std::size_t>> loops;
  std::size_t begin = 0;
  Vec3 loop_start = start_point(face.curves[0]);
  for (std::size_t k = 0; k < face.curves.size(); ++k) {
    const Vec3 end = end_point(face.curves[k]);
    if (distance(end, loop_start) <= kLoopClosureTolerance) {
      loops.emplace_back(begin, k + 1);
      begin = k + 1;
      if (begin < face.curves.size()) loop_start = start_point(face.curves[begin]);
      continue;
    }
    if (k + 1 == face.curves.size()) {
      throw StructuralError("open loop: last curve does not return to loop start");
    }
    if (distance(end, start_point(face.curves[k + 1])) > kLoopClosureTolerance) {
      throw StructuralError("open loop: curve " + std::to_string(k) + " does not meet curve " +
                            std::to_string(k + 1));
    }
  }
  return loops;
}

}  // namespace hcad
