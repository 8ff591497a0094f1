#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcad/grid.hpp"
#include "hcad/vec3.hpp"

namespace hcad {

/// Knot vector in distinct-value form: strictly increasing `knots`, each
/// repeated `mults[i]` times in the expanded (flat) sequence.
struct KnotVector {
  std::vector<double> knots;
  std::vector<int> mults;

  std::vector<double> expanded() const;
  int total() const;

  /// Groups a non-decreasing flat sequence into distinct form.
  static KnotVector from_expanded(std::span<const double> flat);

  friend bool operator==(const KnotVector&, const KnotVector&) = default;
};

/// One structural problem found by a `check_*` routine. `field` uses the JSON field names.
struct StructureIssue {
  std::string field;
  std::string message;
};

struct NurbsCurve {
  std::vector<Vec3> poles;
  std::vector<double> weights;
  int degree = 1;
  KnotVector knot_vector;
  bool is_periodic = false;
  double first = 0.0;
  double last = 1.0;

  friend bool operator==(const NurbsCurve&, const NurbsCurve&) = default;
};

struct NurbsSurface {
  Grid<Vec3> poles;
  Grid<double> weights;
  KnotVector u_knots;
  KnotVector v_knots;
  int u_degree = 1;
  int v_degree = 1;
  bool u_periodic = false;
  bool v_periodic = false;

  friend bool operator==(const NurbsSurface&, const NurbsSurface&) = default;
};

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Knot vector checks shared by curves and surfaces (ordering, multiplicities).
std::vector<StructureIssue> check_knot_vector(const KnotVector& kv, int degree, bool periodic,
                                              const std::string& knots_field,
                                              const std::string& mults_field);
/// Number of poles a (knot vector, degree, periodicity) triple requires.
int required_pole_count(const KnotVector& kv, int degree, bool periodic);

std::vector<StructureIssue> check_curve(const NurbsCurve& curve);
std::vector<StructureIssue> check_surface(const NurbsSurface& surface);

/// Throw StructuralError on the first issue.
void validate(const NurbsCurve& curve);
void validate(const NurbsSurface& surface);

/// Valid evaluation interval of one direction: [u_p, u_{n+1}] for open
/// vectors, [first knot, last knot] for periodic ones.
ParamRange knot_domain(const KnotVector& kv, int degree, bool periodic);

/// All B-spline basis values N_{i,p}(u) over the open knot vector, one per
/// basis index. Only the p+1 functions of the containing span are nonzero.
std::vector<double> basis_functions(const KnotVector& kv, int degree, double u);

Vec3 curve_point(const NurbsCurve& curve, double u);
/// First derivative dC/du of the rational curve.
Vec3 curve_derivative(const NurbsCurve& curve, double u);
Vec3 surface_point(const NurbsSurface& surface, double u, double v);

/// Clamped non-periodic equivalent of a periodic curve or surface. Inputs
/// that are not periodic are returned unchanged.
NurbsCurve unperiodize(const NurbsCurve& curve);
NurbsSurface unperiodize(const NurbsSurface& surface);

/// Repeated-evaluation helper: unperiodizes once and caches the flat knots.
class CurveEvaluator {
 public:
  explicit CurveEvaluator(const NurbsCurve& curve);

  Vec3 point(double u) const;
  Vec3 derivative(double u) const;
  ParamRange range() const { return {first_, last_}; }

 private:
  std::vector<Vec4> cpts_;
  std::vector<double> flat_;
  int degree_;
  double first_;
  double last_;
};

class SurfaceEvaluator {
 public:
  explicit SurfaceEvaluator(const NurbsSurface& surface);

  Vec3 point(double u, double v) const;
  ParamRange u_range() const { return u_range_; }
  ParamRange v_range() const { return v_range_; }
  /// Distinct knots of each direction clipped to the evaluation range.
  const std::vector<double>& u_breaks() const { return u_breaks_; }
  const std::vector<double>& v_breaks() const { return v_breaks_; }

 private:
  Grid<Vec4> cpts_;
  std::vector<double> u_flat_;
  std::vector<double> v_flat_;
  int u_degree_;
  int v_degree_;
  ParamRange u_range_;
  ParamRange v_range_;
  std::vector<double> u_breaks_;
  std::vector<double> v_breaks_;
};

namespace detail {

/// Index k with flat[k] <= u < flat[k+1] inside [p, n]; the final nonempty
/// span is used at the right end of the domain.
int find_span(std::span<const double> flat, int degree, int n, double u);
/// The p+1 nonzero basis values N_{k-p..k,p}(u) for span k.
void nonzero_basis(std::span<const double> flat, int span, int degree, double u,
                   std::span<double> out);
/// Derivatives dN_{k-p..k,p}/du for span k.
void nonzero_basis_derivative(std::span<const double> flat, int span, int degree, double u,
                              std::span<double> out);

}  // namespace detail

}  // namespace hcad
