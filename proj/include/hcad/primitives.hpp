#pragma once

#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include "hcad/nurbs.hpp"
#include "hcad/trimesh.hpp"
#include "hcad/vec3.hpp"

namespace hcad {

struct LineSegment {
  Vec3 start;
  Vec3 end;

  friend bool operator==(const LineSegment&, const LineSegment&) = default;
};

/// Arc of a circle; angles are measured in the frame returned by `plane_frame(normal)`.
struct CircleArc {
  Vec3 center;
  Vec3 normal{0.0, 0.0, 1.0};
  double radius = 1.0;
  double first = 0.0;
  double last = 2.0 * std::numbers::pi;

  friend bool operator==(const CircleArc&, const CircleArc&) = default;
};

/// Major axis along the frame x direction, minor along y.
struct EllipseArc {
  Vec3 center;
  Vec3 normal{0.0, 0.0, 1.0};
  double major_radius = 1.0;
  double minor_radius = 1.0;
  double first = 0.0;
  double last = 2.0 * std::numbers::pi;

  friend bool operator==(const EllipseArc&, const EllipseArc&) = default;
};

struct BezierCurve {
  std::vector<Vec3> poles;
  int degree = 1;
  double first = 0.0;
  double last = 1.0;

  friend bool operator==(const BezierCurve&, const BezierCurve&) = default;
};

struct BsplineCurvePrimitive {
  NurbsCurve curve;

  friend bool operator==(const BsplineCurvePrimitive&, const BsplineCurvePrimitive&) = default;
};

using PrimitiveCurve = std::variant<LineSegment, CircleArc, EllipseArc, BezierCurve, BsplineCurvePrimitive>;

/// Planar face bounded by one or more closed loops of primitive curves,
/// listed loop after loop. A loop ends at the first curve whose end point
/// returns to the loop's start point.
struct PrimitiveFace {
  std::vector<PrimitiveCurve> curves;

  friend bool operator==(const PrimitiveFace&, const PrimitiveFace&) = default;
};

/// Tolerance for loop closure between consecutive curves.
inline constexpr double kLoopClosureTolerance = 1e-6;
/// Maximum distance of boundary samples from the fitted face plane.
inline constexpr double kPlanarityTolerance = 1e-6;
/// Upper bound on polyline segments per curve during refinement.
inline constexpr int kMaxCurveSegments = 1024;

/// In-plane frame (x, y) for a plane normal. x is the normalized projection
/// of the global axis least aligned with the normal (ties go to the lower
/// axis index); y = normal x x.
std::pair<Vec3, Vec3> plane_frame(const Vec3& normal);

std::vector<StructureIssue> check_primitive(const PrimitiveCurve& curve);

/// Parameter interval of the primitive ([0, 1] for lines).
ParamRange parameter_range(const PrimitiveCurve& curve);

Vec3 primitive_point(const PrimitiveCurve& curve, double t);
Vec3 start_point(const PrimitiveCurve& curve);
Vec3 end_point(const PrimitiveCurve& curve);

/// Exact NURBS form. Conics become piecewise rational quadratics with at
/// most a quarter turn per segment and knots at the segment angles.
NurbsCurve primitive_to_nurbs(const PrimitiveCurve& curve);

/// Parameter on `primitive_to_nurbs(curve)` that lands on `primitive_point(curve, t)`.
double nurbs_parameter(const PrimitiveCurve& curve, double t);

/// Polyline through the curve with chord deviation <= chord_tolerance.
/// Samples the exact NURBS form span by span, k equal parameter steps per
/// span with k a power of two. Includes both end points.
std::vector<Vec3> discretize(const PrimitiveCurve& curve, double chord_tolerance);

/// Curve index ranges [begin, end) of each closed loop. Throws StructuralError for open loops.
std::vector<std::pair<std::size_t, std::size_t>> split_loops(const PrimitiveFace& face);

/// Ear-clipping triangulation of the planar region bounded by the face
/// loops; the largest loop is the outer boundary, the others are holes.
/// Triangles are oriented counter-clockwise about the outer loop's normal.
TriMesh triangulate_planar_face(const PrimitiveFace& face, double chord_tolerance);

}  // namespace hcad
