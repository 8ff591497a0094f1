#include "hcad/nurbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hcad/errors.hpp"

namespace hcad {

std::vector<double> KnotVector::expanded() const {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(std::max(total(), 0)));
  for (std::size_t i = 0; i < knots.size() && i < mults.size(); ++i) {
    for (int r = 0; r < mults[i]; ++r) flat.push_back(knots[i]);
  }
  return flat;
}

int KnotVector::total() const { return std::accumulate(mults.begin(), mults.end(), 0); }

KnotVector KnotVector::from_expanded(std::span<const double> flat) {
  KnotVector kv;
  for (double k : flat) {
    if (!kv.knots.empty() && kv.knots.back() == k) {
      ++kv.mults.back();
    } else {
      kv.knots.push_back(k);
      kv.mults.push_back(1);
    }
  }
  return kv;
}

std::vector<StructureIssue> check_knot_vector(const KnotVector& kv, int degree, bool periodic,
                                              const std::string& knots_field,
                                              const std::string& mults_field) {
  std::vector<StructureIssue> issues;
  if (kv.knots.size() != kv.mults.size()) {
    issues.push_back({mults_field, "length differs from " + knots_field});
    return issues;
  }
  if (kv.knots.size() < 2) {
    issues.push_back({knots_field, "at least two distinct knots are required"});
    return issues;
  }
  for (std::size_t i = 0; i < kv.knots.size(); ++i) {
    if (!std::isfinite(kv.knots[i])) {
      issues.push_back({knots_field, "non-finite knot value"});
      return issues;
    }
    if (i > 0 && !(kv.knots[i] > kv.knots[i - 1])) {
      issues.push_back({knots_field, "knots must be strictly increasing"});
      return issues;
    }
  }
  for (int m : kv.mults) {
    if (m < 1) {
      issues.push_back({mults_field, "multiplicities must be >= 1"});
      return issues;
    }
  }
  if (degree < 1) return issues;
  if (periodic) {
    if (kv.mults.front() != kv.mults.back()) {
      issues.push_back({mults_field, "periodic knot vector needs equal first and last multiplicity"});
    }
    if (*std::max_element(kv.mults.begin(), kv.mults.end()) > degree) {
      issues.push_back({mults_field, "periodic multiplicity exceeds degree"});
    }
  } else if (*std::max_element(kv.mults.begin(), kv.mults.end()) > degree + 1) {
    issues.push_back({mults_field, "multiplicity exceeds degree + 1"});
  }
  return issues;
}

int required_pole_count(const KnotVector& kv, int degree, bool periodic) {
  if (periodic) return kv.total() - (kv.mults.empty() ? 0 : kv.mults.front());
  return kv.total() - degree - 1;
}

namespace {

bool all_positive_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double w) { return std::isfinite(w) && w > 0.0; });
}

bool all_finite(std::span<const Vec3> points) {
  return std::all_of(points.begin(), points.end(), [](const Vec3& p) { return is_finite(p); });
}

std::string count_message(std::size_t got, int expected) {
  std::ostringstream os;
  os << "pole count " << got << " does not match knot vector (expected " << expected << ")";
  return os.str();
}

double slack(const ParamRange& r) {
  return 1e-12 * std::max({1.0, std::abs(r.lo), std::abs(r.hi)});
}

double checked_param(double u, const ParamRange& r, const char* what) {
  const double tol = slack(r);
  if (!std::isfinite(u) || u < r.lo - tol || u > r.hi + tol) {
    std::ostringstream os;
    os << what << " parameter " << u << " outside [" << r.lo << ", " << r.hi << "]";
    throw DomainError(os.str());
  }
  return std::clamp(u, r.lo, r.hi);
}

}  // namespace

std::vector<StructureIssue> check_curve(const NurbsCurve& curve) {
  std::vector<StructureIssue> issues;
  if (curve.degree < 1) {
    issues.push_back({"degree", "degree must be >= 1"});
    return issues;
  }
  auto kv_issues =
      check_knot_vector(curve.knot_vector, curve.degree, curve.is_periodic, "knots", "mults");
  if (!kv_issues.empty()) return kv_issues;

  const int expected = required_pole_count(curve.knot_vector, curve.degree, curve.is_periodic);
  if (expected < 1 || static_cast<int>(curve.poles.size()) != expected) {
    issues.push_back({"poles", count_message(curve.poles.size(), expected)});
  }
  if (!all_finite(curve.poles)) issues.push_back({"poles", "non-finite coordinate"});
  if (curve.weights.size() != curve.poles.size()) {
    issues.push_back({"weights", "weight/pole count mismatch"});
  } else if (!all_positive_finite(curve.weights)) {
    issues.push_back({"weights", "weights must be positive"});
  }
  if (!issues.empty()) return issues;

  if (!std::isfinite(curve.first) || !std::isfinite(curve.last) || !(curve.first < curve.last)) {
    issues.push_back({"first", "parameter range must satisfy first < last"});
    return issues;
  }
  const ParamRange dom = knot_domain(curve.knot_vector, curve.degree, curve.is_periodic);
  const double tol = slack(dom);
  if (curve.first < dom.lo - tol) issues.push_back({"first", "outside knot domain"});
  if (curve.last > dom.hi + tol) issues.push_back({"last", "outside knot domain"});
  return issues;
}

std::vector<StructureIssue> check_surface(const NurbsSurface& s) {
  std::vector<StructureIssue> issues;
  if (s.u_degree < 1) issues.push_back({"u_degree", "degree must be >= 1"});
  if (s.v_degree < 1) issues.push_back({"v_degree", "degree must be >= 1"});
  if (!issues.empty()) return issues;

  auto u_issues = check_knot_vector(s.u_knots, s.u_degree, s.u_periodic, "u_knots", "u_mults");
  auto v_issues = check_knot_vector(s.v_knots, s.v_degree, s.v_periodic, "v_knots", "v_mults");
  issues.insert(issues.end(), u_issues.begin(), u_issues.end());
  issues.insert(issues.end(), v_issues.begin(), v_issues.end());
  if (!issues.empty()) return issues;

  const int rows = required_pole_count(s.u_knots, s.u_degree, s.u_periodic);
  const int cols = required_pole_count(s.v_knots, s.v_degree, s.v_periodic);
  if (rows < 1 || static_cast<int>(s.poles.rows()) != rows) {
    issues.push_back({"poles", "u " + count_message(s.poles.rows(), rows)});
  }
  if (cols < 1 || static_cast<int>(s.poles.cols()) != cols) {
    issues.push_back({"poles", "v " + count_message(s.poles.cols(), cols)});
  }
  if (!all_finite(s.poles.values())) issues.push_back({"poles", "non-finite coordinate"});
  if (s.weights.rows() != s.poles.rows() || s.weights.cols() != s.poles.cols()) {
    issues.push_back({"weights", "weight/pole count mismatch"});
  } else if (!all_positive_finite(s.weights.values())) {
    issues.push_back({"weights", "weights must be positive"});
  }
  return issues;
}

void validate(const NurbsCurve& curve) {
  if (auto issues = check_curve(curve); !issues.empty()) {
    throw StructuralError(issues.front().field + ": " + issues.front().message);
  }
}

void validate(const NurbsSurface& surface) {
  if (auto issues = check_surface(surface); !issues.empty()) {
    throw StructuralError(issues.front().field + ": " + issues.front().message);
  }
}

ParamRange knot_domain(const KnotVector& kv, int degree, bool periodic) {
  if (kv.knots.empty()) throw StructuralError("empty knot vector");
  if (periodic) return {kv.knots.front(), kv.knots.back()};
  const auto flat = kv.expanded();
  const int n_plus_1 = static_cast<int>(flat.size()) - degree - 1;
  if (degree < 0 || n_plus_1 < 1 || degree >= static_cast<int>(flat.size())) {
    throw StructuralError("knot vector too short for degree");
  }
  return {flat[degree], flat[n_plus_1]};
}

namespace detail {

int find_span(std::span<const double> flat, int degree, int n, double u) {
  const double lo = flat[degree];
  const double hi = flat[n + 1];
  if (!(lo < hi)) throw DomainError("zero-width parameter domain");
  if (u >= hi) {
    int k = n;
    while (k > degree && !(flat[k] < flat[k + 1])) --k;
    return k;
  }
  auto first = flat.begin() + degree;
  auto last = flat.begin() + n + 2;
  return static_cast<int>(std::upper_bound(first, last, u) - flat.begin()) - 1;
}

void nonzero_basis(std::span<const double> flat, int span, int degree, double u,
                   std::span<double> out) {
  // Triangular Cox-de Boor scheme; denominators are nonzero inside a nonempty span.
  double left[32];
  double right[32];
  out[0] = 1.0;
  for (int j = 1; j <= degree; ++j) {
    left[j] = u - flat[span + 1 - j];
    right[j] = flat[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = out[r] / (right[r + 1] + left[j - r]);
      out[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out[j] = saved;
  }
}

void nonzero_basis_derivative(std::span<const double> flat, int span, int degree, double u,
                              std::span<double> out) {
  double lower[32];
  nonzero_basis(flat, span, degree - 1, u, std::span<double>(lower, degree));
  // lower[t] = N_{span-degree+1+t, degree-1}
  auto lower_at = [&](int i) {
    const int t = i - (span - degree + 1);
    return (t >= 0 && t < degree) ? lower[t] : 0.0;
  };
  for (int t = 0; t <= degree; ++t) {
    const int i = span - degree + t;
    double d = 0.0;
    const double a = flat[i + degree] - flat[i];
    const double b = flat[i + degree + 1] - flat[i + 1];
    if (a > 0.0) d += lower_at(i) / a;
    if (b > 0.0) d -= lower_at(i + 1) / b;
    out[t] = degree * d;
  }
}

}  // namespace detail

namespace {

constexpr int kMaxDegree = 30;

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxDegree) throw StructuralError("unsupported degree");
}

}  // namespace

std::vector<double> basis_functions(const KnotVector& kv, int degree, double u) {
  check_degree(degree);
  const auto flat = kv.expanded();
  const int n = static_cast<int>(flat.size()) - degree - 2;
  if (n < 0) throw StructuralError("knot vector too short for degree");
  for (std::size_t i = 1; i < flat.size(); ++i) {
    if (flat[i] < flat[i - 1]) throw StructuralError("knot vector must be non-decreasing");
  }
  const ParamRange dom{flat[degree], flat[n + 1]};
  u = checked_param(u, dom, "basis");
  const int span = detail::find_span(flat, degree, n, u);
  std::vector<double> values(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> local(static_cast<std::size_t>(degree + 1));
  detail::nonzero_basis(flat, span, degree, u, local);
  for (int t = 0; t <= degree; ++t) values[span - degree + t] = local[t];
  return values;
}

// --- periodic unrolling -----------------------------------------------------

namespace {

using Strands = std::vector<std::vector<Vec4>>;

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void insert_knot(std::vector<double>& flat, Strands& strands, int p, double ubar) {
  const int n = static_cast<int>(strands.front().size()) - 1;
  const int k = static_cast<int>(std::upper_bound(flat.begin(), flat.end(), ubar) - flat.begin()) - 1;
  if (k < p || k > n) throw StructuralError("knot insertion outside the unrolled domain");
  for (auto& strand : strands) {
    std::vector<Vec4> next(strand.size() + 1);
    for (int i = 0; i <= k - p; ++i) next[i] = strand[i];
    for (int i = k - p + 1; i <= k; ++i) {
      const double alpha = (ubar - flat[i]) / (flat[i + p] - flat[i]);
      next[i] = alpha * strand[i] + (1.0 - alpha) * strand[i - 1];
    }
    for (int i = k + 1; i <= n + 1; ++i) next[i] = strand[i - 1];
    strand = std::move(next);
  }
  flat.insert(flat.begin() + k + 1, ubar);
}

// Converts one periodic direction into a clamped open knot vector. Pole j of
// the unrolled sequence is strand[j mod L]; the first span [k0, k1) is driven
// by poles 0..p.
KnotVector unroll_periodic(const KnotVector& kv, int p, Strands& strands) {
  const int m0 = kv.mults.front();
  const int period = kv.total() - kv.mults.back();
  if (period < 1 || m0 > p) throw StructuralError("malformed periodic knot structure");
  for (const auto& s : strands) {
    if (static_cast<int>(s.size()) != period) {
      throw StructuralError("periodic pole count does not match knot vector");
    }
  }
  const double k0 = kv.knots.front();
  const double km = kv.knots.back();
  const double T = km - k0;

  std::vector<double> one_period;
  for (std::size_t i = 0; i + 1 < kv.knots.size(); ++i) {
    for (int r = 0; r < kv.mults[i]; ++r) one_period.push_back(kv.knots[i]);
  }
  auto knot_at = [&](long r) {
    const long q = floor_div(r, period);
    const long idx = r - q * period;
    if (idx == 0 && q == 1) return km;
    return one_period[idx] + static_cast<double>(q) * T;
  };

  const int margin = p;
  const long j_lo = -margin;
  const long j_hi = period + p - m0 + margin;
  const long shift = p - m0 + 1;

  std::vector<double> flat;
  for (long j = j_lo; j <= j_hi + p + 1; ++j) flat.push_back(knot_at(j - shift));
  Strands open(strands.size());
  for (std::size_t s = 0; s < strands.size(); ++s) {
    for (long j = j_lo; j <= j_hi; ++j) {
      open[s].push_back(strands[s][static_cast<std::size_t>(j - floor_div(j, period) * period)]);
    }
  }

  auto mult_of = [&](double value) {
    return static_cast<int>(std::count(flat.begin(), flat.end(), value));
  };
  while (mult_of(k0) < p) insert_knot(flat, open, p, k0);
  while (mult_of(km) < p) insert_knot(flat, open, p, km);

  const int a = static_cast<int>(std::find(flat.begin(), flat.end(), k0) - flat.begin());
  const int s = mult_of(k0);
  const int b = static_cast<int>(std::find(flat.begin(), flat.end(), km) - flat.begin());

  std::vector<double> clamped(static_cast<std::size_t>(p + 1), k0);
  clamped.insert(clamped.end(), flat.begin() + a + s, flat.begin() + b);
  clamped.insert(clamped.end(), static_cast<std::size_t>(p + 1), km);

  for (std::size_t idx = 0; idx < strands.size(); ++idx) {
    strands[idx].assign(open[idx].begin() + (a + s - 1 - p), open[idx].begin() + b);
  }
  return KnotVector::from_expanded(clamped);
}

}  // namespace

NurbsCurve unperiodize(const NurbsCurve& curve) {
  if (!curve.is_periodic) return curve;
  if (curve.poles.size() != curve.weights.size()) {
    throw StructuralError("weight/pole count mismatch");
  }
  Strands strands(1);
  for (std::size_t i = 0; i < curve.poles.size(); ++i) {
    strands[0].push_back(Vec4::weighted(curve.poles[i], curve.weights[i]));
  }
  NurbsCurve out = curve;
  out.knot_vector = unroll_periodic(curve.knot_vector, curve.degree, strands);
  out.is_periodic = false;
  out.poles.clear();
  out.weights.clear();
  for (const auto& c : strands[0]) {
    out.poles.push_back(c.project());
    out.weights.push_back(c.w);
  }
  return out;
}

NurbsSurface unperiodize(const NurbsSurface& surface) {
  if (!surface.u_periodic && !surface.v_periodic) return surface;
  if (surface.poles.rows() != surface.weights.rows() ||
      surface.poles.cols() != surface.weights.cols()) {
    throw StructuralError("weight/pole count mismatch");
  }
  Grid<Vec4> cpts(surface.poles.rows(), surface.poles.cols());
  for (std::size_t i = 0; i < cpts.rows(); ++i) {
    for (std::size_t j = 0; j < cpts.cols(); ++j) {
      cpts(i, j) = Vec4::weighted(surface.poles(i, j), surface.weights(i, j));
    }
  }
  NurbsSurface out = surface;
  if (surface.u_periodic) {
    Strands columns(cpts.cols());
    for (std::size_t j = 0; j < cpts.cols(); ++j) {
      for (std::size_t i = 0; i < cpts.rows(); ++i) columns[j].push_back(cpts(i, j));
    }
    out.u_knots = unroll_periodic(surface.u_knots, surface.u_degree, columns);
    out.u_periodic = false;
    Grid<Vec4> next(columns.front().size(), cpts.cols());
    for (std::size_t j = 0; j < next.cols(); ++j) {
      for (std::size_t i = 0; i < next.rows(); ++i) next(i, j) = columns[j][i];
    }
    cpts = std::move(next);
  }
  if (surface.v_periodic) {
    Strands rows(cpts.rows());
    for (std::size_t i = 0; i < cpts.rows(); ++i) {
      rows[i].assign(cpts.row(i).begin(), cpts.row(i).end());
    }
    out.v_knots = unroll_periodic(surface.v_knots, surface.v_degree, rows);
    out.v_periodic = false;
    Grid<Vec4> next(cpts.rows(), rows.front().size());
    for (std::size_t i = 0; i < next.rows(); ++i) {
      std::copy(rows[i].begin(), rows[i].end(), next.row(i).begin());
    }
    cpts = std::move(next);
  }
  out.poles = Grid<Vec3>(cpts.rows(), cpts.cols());
  out.weights = Grid<double>(cpts.rows(), cpts.cols());
  for (std::size_t i = 0; i < cpts.rows(); ++i) {
    for (std::size_t j = 0; j < cpts.cols(); ++j) {
      out.poles(i, j) = cpts(i, j).project();
      out.weights(i, j) = cpts(i, j).w;
    }
  }
  return out;
}

// --- evaluators ---------------------------------------------------------------

CurveEvaluator::CurveEvaluator(const NurbsCurve& curve) {
  validate(curve);
  check_degree(curve.degree);
  const NurbsCurve open = unperiodize(curve);
  degree_ = open.degree;
  first_ = curve.first;
  last_ = curve.last;
  flat_ = open.knot_vector.expanded();
  cpts_.reserve(open.poles.size());
  for (std::size_t i = 0; i < open.poles.size(); ++i) {
    cpts_.push_back(Vec4::weighted(open.poles[i], open.weights[i]));
  }
}

Vec3 CurveEvaluator::point(double u) const {
  u = checked_param(u, {first_, last_}, "curve");
  const int n = static_cast<int>(cpts_.size()) - 1;
  const int span = detail::find_span(flat_, degree_, n, u);
  double basis[kMaxDegree + 1];
  detail::nonzero_basis(flat_, span, degree_, u, std::span<double>(basis, degree_ + 1));
  Vec4 acc{};
  for (int t = 0; t <= degree_; ++t) acc = acc + basis[t] * cpts_[span - degree_ + t];
  if (!(acc.w > 0.0)) throw std::logic_error("rational denominator vanished inside the domain");
  return acc.project();
}

Vec3 CurveEvaluator::derivative(double u) const {
  u = checked_param(u, {first_, last_}, "curve");
  const int n = static_cast<int>(cpts_.size()) - 1;
  const int span = detail::find_span(flat_, degree_, n, u);
  double basis[kMaxDegree + 1];
  double dbasis[kMaxDegree + 1];
  detail::nonzero_basis(flat_, span, degree_, u, std::span<double>(basis, degree_ + 1));
  detail::nonzero_basis_derivative(flat_, span, degree_, u, std::span<double>(dbasis, degree_ + 1));
  Vec4 a{};
  Vec4 da{};
  for (int t = 0; t <= degree_; ++t) {
    a = a + basis[t] * cpts_[span - degree_ + t];
    da = da + dbasis[t] * cpts_[span - degree_ + t];
  }
  const Vec3 c = a.project();
  const Vec3 dnum{da.x, da.y, da.z};
  return (dnum - da.w * c) / a.w;
}

namespace {

std::vector<double> breaks_within(const KnotVector& kv, const ParamRange& r) {
  std::vector<double> out{r.lo};
  for (double k : kv.knots) {
    if (k > r.lo && k < r.hi) out.push_back(k);
  }
  out.push_back(r.hi);
  return out;
}

}  // namespace

SurfaceEvaluator::SurfaceEvaluator(const NurbsSurface& surface) {
  validate(surface);
  check_degree(surface.u_degree);
  check_degree(surface.v_degree);
  const NurbsSurface open = unperiodize(surface);
  u_degree_ = open.u_degree;
  v_degree_ = open.v_degree;
  u_flat_ = open.u_knots.expanded();
  v_flat_ = open.v_knots.expanded();
  u_range_ = knot_domain(open.u_knots, open.u_degree, false);
  v_range_ = knot_domain(open.v_knots, open.v_degree, false);
  if (u_range_.width() > 0.0) u_breaks_ = breaks_within(open.u_knots, u_range_);
  if (v_range_.width() > 0.0) v_breaks_ = breaks_within(open.v_knots, v_range_);
  cpts_ = Grid<Vec4>(open.poles.rows(), open.poles.cols());
  for (std::size_t i = 0; i < cpts_.rows(); ++i) {
    for (std::size_t j = 0; j < cpts_.cols(); ++j) {
      cpts_(i, j) = Vec4::weighted(open.poles(i, j), open.weights(i, j));
    }
  }
}

Vec3 SurfaceEvaluator::point(double u, double v) const {
  u = checked_param(u, u_range_, "surface u");
  v = checked_param(v, v_range_, "surface v");
  const int nu = static_cast<int>(cpts_.rows()) - 1;
  const int nv = static_cast<int>(cpts_.cols()) - 1;
  const int su = detail::find_span(u_flat_, u_degree_, nu, u);
  const int sv = detail::find_span(v_flat_, v_degree_, nv, v);
  double bu[kMaxDegree + 1];
  double bv[kMaxDegree + 1];
  detail::nonzero_basis(u_flat_, su, u_degree_, u, std::span<double>(bu, u_degree_ + 1));
  detail::nonzero_basis(v_flat_, sv, v_degree_, v, std::span<double>(bv, v_degree_ + 1));
  Vec4 acc{};
  for (int a = 0; a <= u_degree_; ++a) {
    Vec4 row{};
    for (int b = 0; b <= v_degree_; ++b) {
      row = row + bv[b] * cpts_(su - u_degree_ + a, sv - v_degree_ + b);
    }
    acc = acc + bu[a] * row;
  }
  if (!(acc.w > 0.0)) throw std::logic_error("rational denominator vanished inside the domain");
  return acc.project();
}

Vec3 curve_point(const NurbsCurve& curve, double u) { return CurveEvaluator(curve).point(u); }

Vec3 curve_derivative(const NurbsCurve& curve, double u) {
  return CurveEvaluator(curve).derivative(u);
}

Vec3 surface_point(const NurbsSurface& surface, double u, double v) {
  return SurfaceEvaluator(surface).point(u, v);
}

}  // namespace hcad
