#include "hcad/cad_json.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <set>

namespace hcad {

using nlohmann::json;

double round6(double value) { return std::strtod(format_fixed6(value).c_str(), nullptr); }

std::string format_fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string format_real(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot serialize a non-finite number");
  if (value == 0.0) return "0.0";
  // Shortest round-trip digits, laid out fixed for exponents in [-4, 16) and
  // scientific otherwise.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific);
  const std::string sci(buf, res.ptr);
  const auto e_pos = sci.find('e');
  std::string mantissa = sci.substr(0, e_pos);
  const int exponent = std::stoi(sci.substr(e_pos + 1));
  const bool negative = mantissa.front() == '-';
  if (negative) mantissa.erase(0, 1);
  std::string digits;
  for (char c : mantissa) {
    if (c != '.') digits += c;
  }
  std::string out = negative ? "-" : "";
  if (exponent < -4 || exponent >= 16) {
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    char exp_buf[16];
    std::snprintf(exp_buf, sizeof exp_buf, "e%c%02d", exponent < 0 ? '-' : '+', std::abs(exponent));
    return out + exp_buf;
  }
  if (exponent < 0) return out + "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
  const auto int_len = static_cast<std::size_t>(exponent) + 1;
  if (digits.size() <= int_len) return out + digits + std::string(int_len - digits.size(), '0') + ".0";
  return out + digits.substr(0, int_len) + "." + digits.substr(int_len);
}

std::vector<WeightRun> compress_weights(std::span<const double> weights) {
  std::vector<WeightRun> runs;
  for (double w : weights) {
    const double r = round6(w);
    if (!runs.empty() && runs.back().value == r) {
      ++runs.back().count;
    } else {
      runs.push_back({r, 1});
    }
  }
  return runs;
}

std::vector<double> expand_weights(std::span<const WeightRun> runs) {
  std::vector<double> out;
  for (const WeightRun& r : runs) out.insert(out.end(), static_cast<std::size_t>(r.count), r.value);
  return out;
}

// --- parsing -------------------------------------------------------------------

namespace {

const std::set<std::string> kNurbsKeys = {"type",    "poles",    "weights",  "u_knots",    "v_knots",   "u_mults",
                                          "v_mults", "u_degree", "v_degree", "u_periodic", "v_periodic"};

const std::set<std::string>& curve_keys(const std::string& type) {
  static const std::set<std::string> line = {"type", "start", "end"};
  static const std::set<std::string> circle = {"type", "center", "normal", "radius", "first", "last"};
  static const std::set<std::string> ellipse = {"type",         "center", "normal", "major_radius",
                                                "minor_radius", "first",  "last"};
  static const std::set<std::string> bezier = {"type", "poles", "degree", "first", "last"};
  static const std::set<std::string> bspline = {"type",    "poles",       "degree", "knots", "mults",
                                                "weights", "is_periodic", "first",  "last"};
  if (type == "line") return line;
  if (type == "circle") return circle;
  if (type == "ellipse") return ellipse;
  if (type == "bezier") return bezier;
  return bspline;
}

// Field reader bound to one face. Each failure records a violation and
// returns false; callers stop reading a face after its first failure.
class Reader {
 public:
  Reader(int face, std::vector<Violation>& out) : face_(face), out_(out) {}

  bool fail(const std::string& path, const std::string& message) {
    out_.push_back({face_, path, message});
    return false;
  }

  const json* field(const json& obj, const std::string& prefix, const std::string& key, bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(join(prefix, key), "missing required field");
      return nullptr;
    }
    return &*it;
  }

  bool real(const json& j, const std::string& path, double& out) {
    if (!j.is_number()) return fail(path, "expected a number");
    out = j.get<double>();
    if (!std::isfinite(out)) return fail(path, "non-finite number");
    return true;
  }

  bool integer(const json& j, const std::string& path, long long& out) {
    if (!j.is_number_integer()) return fail(path, "expected an integer");
    out = j.get<long long>();
    return true;
  }

  bool degree(const json& j, const std::string& path, int& out) {
    long long v = 0;
    if (!integer(j, path, v)) return false;
    if (v < 1 || v > 25) return fail(path, "degree must be in [1, 25]");
    out = static_cast<int>(v);
    return true;
  }

  bool boolean(const json& j, const std::string& path, bool& out) {
    if (!j.is_boolean()) return fail(path, "expected a boolean");
    out = j.get<bool>();
    return true;
  }

  bool point(const json& j, const std::string& path, Vec3& out) {
    if (!j.is_array() || j.size() != 3) return fail(path, "expected [x, y, z]");
    for (int a = 0; a < 3; ++a) {
      if (!real(j[a], path + "[" + std::to_string(a) + "]", out[a])) return false;
    }
    return true;
  }

  bool points(const json& j, const std::string& path, std::vector<Vec3>& out) {
    if (!j.is_array() || j.empty()) return fail(path, "expected a non-empty array of points");
    out.resize(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!point(j[i], path + "[" + std::to_string(i) + "]", out[i])) return false;
    }
    return true;
  }

  bool reals(const json& j, const std::string& path, std::vector<double>& out) {
    if (!j.is_array()) return fail(path, "expected an array of numbers");
    out.resize(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!real(j[i], path + "[" + std::to_string(i) + "]", out[i])) return false;
    }
    return true;
  }

  bool ints(const json& j, const std::string& path, std::vector<int>& out) {
    if (!j.is_array()) return fail(path, "expected an array of integers");
    out.resize(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      long long v = 0;
      if (!integer(j[i], path + "[" + std::to_string(i) + "]", v)) return false;
      if (v < 1 || v > 1000000) return fail(path, "multiplicities must be >= 1");
      out[i] = static_cast<int>(v);
    }
    return true;
  }

  // Weights as runs [[value, count], ...] whose counts sum to `total`.
  static bool looks_like_runs(const json& j, std::size_t total) {
    std::int64_t sum = 0;
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number_integer()) return false;
      const auto n = e[1].get<std::int64_t>();
      if (n < 1) return false;
      sum += n;
    }
    return !j.empty() && sum == static_cast<std::int64_t>(total);
  }

  bool runs(const json& j, const std::string& path, std::vector<double>& out) {
    std::vector<WeightRun> rs;
    for (std::size_t i = 0; i < j.size(); ++i) {
      WeightRun r;
      if (!real(j[i][0], path + "[" + std::to_string(i) + "][0]", r.value)) return false;
      r.count = j[i][1].get<std::int64_t>();
      rs.push_back(r);
    }
    out = expand_weights(rs);
    return true;
  }

  /// Flat list, runs, or (surfaces) a rows x cols grid, flattened row-major.
  bool weights(const json& j, const std::string& path, std::size_t rows, std::size_t cols, bool grid_allowed,
               std::vector<double>& out) {
    const std::size_t total = rows * cols;
    if (!j.is_array()) return fail(path, "expected an array");
    if (std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_number(); })) {
      if (!reals(j, path, out)) return false;
    } else if (looks_like_runs(j, total)) {
      if (!runs(j, path, out)) return false;
    } else if (grid_allowed && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_array(); })) {
      if (j.size() != rows) return fail(path, "weight/pole count mismatch");
      out.clear();
      for (std::size_t i = 0; i < j.size(); ++i) {
        std::vector<double> row;
        if (!reals(j[i], path + "[" + std::to_string(i) + "]", row)) return false;
        if (row.size() != cols) return fail(path, "weight/pole count mismatch");
        out.insert(out.end(), row.begin(), row.end());
      }
    } else {
      return fail(path, "weights must be numbers or (value, frequency) runs");
    }
    if (out.size() != total) return fail(path, "weight/pole count mismatch");
    return true;
  }

  void unknown_keys(const json& obj, const std::set<std::string>& known, const std::string& prefix,
                    std::vector<std::string>& warnings) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!known.count(it.key())) {
        std::string where = face_ >= 0 ? "faces[" + std::to_string(face_) + "]" : std::string();
        const std::string p = join(prefix, it.key());
        where += where.empty() ? p : "." + p;
        warnings.push_back("ignored unknown key " + where);
      }
    }
  }

  static std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
  }

  int face() const { return face_; }

 private:
  int face_;
  std::vector<Violation>& out_;
};

void add_issues(Reader& r, const std::string& prefix, const std::vector<StructureIssue>& issues) {
  for (const auto& issue : issues) r.fail(Reader::join(prefix, issue.field), issue.message);
}

bool read_nurbs(Reader& r, const json& obj, NurbsSurface& s, std::vector<std::string>& warnings) {
  r.unknown_keys(obj, kNurbsKeys, "", warnings);
  const json* poles = r.field(obj, "", "poles");
  const json* uk = r.field(obj, "", "u_knots");
  const json* vk = r.field(obj, "", "v_knots");
  const json* um = r.field(obj, "", "u_mults");
  const json* vm = r.field(obj, "", "v_mults");
  const json* ud = r.field(obj, "", "u_degree");
  const json* vd = r.field(obj, "", "v_degree");
  if (!poles || !uk || !vk || !um || !vm || !ud || !vd) return false;

  if (!poles->is_array() || poles->empty()) return r.fail("poles", "expected a 2D array of points");
  std::size_t cols = 0;
  for (std::size_t i = 0; i < poles->size(); ++i) {
    std::vector<Vec3> row;
    if (!r.points((*poles)[i], "poles[" + std::to_string(i) + "]", row)) return false;
    if (i == 0) {
      cols = row.size();
      s.poles = Grid<Vec3>(poles->size(), cols);
    } else if (row.size() != cols) {
      return r.fail("poles", "rows have different lengths");
    }
    std::copy(row.begin(), row.end(), s.poles.row(i).begin());
  }

  if (!r.reals(*uk, "u_knots", s.u_knots.knots) || !r.reals(*vk, "v_knots", s.v_knots.knots) ||
      !r.ints(*um, "u_mults", s.u_knots.mults) || !r.ints(*vm, "v_mults", s.v_knots.mults) ||
      !r.degree(*ud, "u_degree", s.u_degree) || !r.degree(*vd, "v_degree", s.v_degree)) {
    return false;
  }
  if (const json* up = r.field(obj, "", "u_periodic", false); up && !r.boolean(*up, "u_periodic", s.u_periodic)) {
    return false;
  }
  if (const json* vp = r.field(obj, "", "v_periodic", false); vp && !r.boolean(*vp, "v_periodic", s.v_periodic)) {
    return false;
  }

  s.weights = Grid<double>(s.poles.rows(), s.poles.cols(), 1.0);
  if (const json* w = r.field(obj, "", "weights", false)) {
    std::vector<double> flat;
    if (!r.weights(*w, "weights", s.poles.rows(), s.poles.cols(), true, flat)) return false;
    s.weights.values() = std::move(flat);
  }
  const auto issues = check_surface(s);
  add_issues(r, "", issues);
  return issues.empty();
}

bool read_curve(Reader& r, const json& obj, const std::string& path, PrimitiveCurve& out,
                std::vector<std::string>& warnings) {
  if (!obj.is_object()) return r.fail(path, "expected an object");
  const json* type = r.field(obj, path, "type");
  if (!type) return false;
  if (!type->is_string()) return r.fail(path + ".type", "expected a string");
  const std::string kind = type->get<std::string>();
  if (kind != "line" && kind != "circle" && kind != "ellipse" && kind != "bezier" && kind != "bspline") {
    return r.fail(path + ".type", "unknown curve kind '" + kind + "'");
  }
  r.unknown_keys(obj, curve_keys(kind), path, warnings);
  auto get = [&](const char* key) { return r.field(obj, path, key); };
  auto p = [&](const char* key) { return path + "." + key; };

  if (kind == "line") {
    LineSegment l;
    const json* a = get("start");
    const json* b = get("end");
    if (!a || !b || !r.point(*a, p("start"), l.start) || !r.point(*b, p("end"), l.end)) return false;
    out = l;
  } else if (kind == "circle") {
    CircleArc c;
    const json *ce = get("center"), *n = get("normal"), *rad = get("radius"), *f = get("first"), *l = get("last");
    if (!ce || !n || !rad || !f || !l) return false;
    if (!r.point(*ce, p("center"), c.center) || !r.point(*n, p("normal"), c.normal) ||
        !r.real(*rad, p("radius"), c.radius) || !r.real(*f, p("first"), c.first) || !r.real(*l, p("last"), c.last)) {
      return false;
    }
    out = c;
  } else if (kind == "ellipse") {
    EllipseArc e;
    const json *ce = get("center"), *n = get("normal"), *ma = get("major_radius"), *mi = get("minor_radius"),
               *f = get("first"), *l = get("last");
    if (!ce || !n || !ma || !mi || !f || !l) return false;
    if (!r.point(*ce, p("center"), e.center) || !r.point(*n, p("normal"), e.normal) ||
        !r.real(*ma, p("major_radius"), e.major_radius) || !r.real(*mi, p("minor_radius"), e.minor_radius) ||
        !r.real(*f, p("first"), e.first) || !r.real(*l, p("last"), e.last)) {
      return false;
    }
    out = e;
  } else if (kind == "bezier") {
    BezierCurve b;
    const json *po = get("poles"), *d = get("degree"), *f = get("first"), *l = get("last");
    if (!po || !d || !f || !l) return false;
    if (!r.points(*po, p("poles"), b.poles) || !r.degree(*d, p("degree"), b.degree) ||
        !r.real(*f, p("first"), b.first) || !r.real(*l, p("last"), b.last)) {
      return false;
    }
    out = b;
  } else {
    BsplineCurvePrimitive b;
    NurbsCurve& c = b.curve;
    const json *po = get("poles"), *d = get("degree"), *k = get("knots"), *m = get("mults"), *f = get("first"),
               *l = get("last");
    if (!po || !d || !k || !m || !f || !l) return false;
    if (!r.points(*po, p("poles"), c.poles) || !r.degree(*d, p("degree"), c.degree) ||
        !r.reals(*k, p("knots"), c.knot_vector.knots) || !r.ints(*m, p("mults"), c.knot_vector.mults) ||
        !r.real(*f, p("first"), c.first) || !r.real(*l, p("last"), c.last)) {
      return false;
    }
    if (const json* per = r.field(obj, path, "is_periodic", false);
        per && !r.boolean(*per, p("is_periodic"), c.is_periodic)) {
      return false;
    }
    c.weights.assign(c.poles.size(), 1.0);
    if (const json* w = r.field(obj, path, "weights", false)) {
      if (!r.weights(*w, p("weights"), c.poles.size(), 1, false, c.weights)) return false;
    }
    out = b;
  }
  const auto issues = check_primitive(out);
  add_issues(r, path, issues);
  return issues.empty();
}

bool read_primitive_face(Reader& r, const json& obj, PrimitiveFace& face, std::vector<std::string>& warnings) {
  r.unknown_keys(obj, {"type", "curves"}, "", warnings);
  const json* curves = r.field(obj, "", "curves");
  if (!curves) return false;
  if (!curves->is_array() || curves->empty()) return r.fail("curves", "expected a non-empty array of curves");
  bool ok = true;
  for (std::size_t k = 0; k < curves->size(); ++k) {
    PrimitiveCurve c;
    if (read_curve(r, (*curves)[k], "curves[" + std::to_string(k) + "]", c, warnings)) {
      face.curves.push_back(std::move(c));
    } else {
      ok = false;
    }
  }
  if (!ok) return false;
  try {
    split_loops(face);
  } catch (const StructuralError& e) {
    return r.fail("curves", e.what());
  }
  return true;
}

SolidDocument read_document(std::string_view text, std::vector<Violation>& violations,
                            std::vector<std::string>& warnings) {
  SolidDocument doc;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    violations.push_back({-1, "", std::string("JSON syntax error: ") + e.what()});
    return doc;
  }
  Reader env(-1, violations);
  if (!root.is_object()) {
    env.fail("", "document must be a JSON object");
    return doc;
  }
  env.unknown_keys(root, {"name", "faces"}, "", warnings);
  if (auto it = root.find("name"); it != root.end()) {
    if (it->is_string()) {
      doc.name = it->get<std::string>();
    } else {
      env.fail("name", "expected a string");
    }
  }
  const json* faces = env.field(root, "", "faces");
  if (!faces) return doc;
  if (!faces->is_array() || faces->empty()) {
    env.fail("faces", "document needs at least one face");
    return doc;
  }
  for (std::size_t f = 0; f < faces->size(); ++f) {
    Reader r(static_cast<int>(f), violations);
    const json& obj = (*faces)[f];
    if (!obj.is_object()) {
      r.fail("", "face must be an object");
      continue;
    }
    const json* type = r.field(obj, "", "type");
    if (!type) continue;
    if (!type->is_string()) {
      r.fail("type", "expected a string");
      continue;
    }
    const std::string kind = type->get<std::string>();
    if (kind == "nurbs") {
      NurbsSurface s;
      if (read_nurbs(r, obj, s, warnings)) doc.faces.push_back({std::move(s)});
    } else if (kind == "primitive") {
      PrimitiveFace p;
      if (read_primitive_face(r, obj, p, warnings)) doc.faces.push_back({std::move(p)});
    } else {
      r.fail("type", "unknown face kind '" + kind + "'");
    }
  }
  return doc;
}

// --- serialization -----------------------------------------------------------

void put_coord(std::string& out, const Vec3& p) {
  out += '[' + format_fixed6(p.x) + ',' + format_fixed6(p.y) + ',' + format_fixed6(p.z) + ']';
}

void put_direction(std::string& out, const Vec3& p) {
  out += '[' + format_real(p.x) + ',' + format_real(p.y) + ',' + format_real(p.z) + ']';
}

void put_reals(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_real(v[i]);
  }
  out += ']';
}

void put_ints(std::string& out, const std::vector<int>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
}

void put_runs(std::string& out, std::span<const double> weights) {
  out += '[';
  const auto runs = compress_weights(weights);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i) out += ',';
    out += '[' + format_real(runs[i].value) + ',' + std::to_string(runs[i].count) + ']';
  }
  out += ']';
}

void put_point_list(std::string& out, const std::vector<Vec3>& pts) {
  out += '[';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ',';
    put_coord(out, pts[i]);
  }
  out += ']';
}

const char* boolean(bool b) { return b ? "true" : "false"; }

void put_surface(std::string& out, const NurbsSurface& s) {
  out += R"({"type":"nurbs","poles":[)";
  for (std::size_t i = 0; i < s.poles.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < s.poles.cols(); ++j) {
      if (j) out += ',';
      put_coord(out, s.poles(i, j));
    }
    out += ']';
  }
  out += R"(],"weights":)";
  put_runs(out, s.weights.values());
  out += R"(,"u_knots":)";
  put_reals(out, s.u_knots.knots);
  out += R"(,"v_knots":)";
  put_reals(out, s.v_knots.knots);
  out += R"(,"u_mults":)";
  put_ints(out, s.u_knots.mults);
  out += R"(,"v_mults":)";
  put_ints(out, s.v_knots.mults);
  out += R"(,"u_degree":)" + std::to_string(s.u_degree);
  out += R"(,"v_degree":)" + std::to_string(s.v_degree);
  out += R"(,"u_periodic":)" + std::string(boolean(s.u_periodic));
  out += R"(,"v_periodic":)" + std::string(boolean(s.v_periodic)) + "}";
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void put_curve(std::string& out, const PrimitiveCurve& curve) {
  std::visit(overloaded{
                 [&](const LineSegment& l) {
                   out += R"({"type":"line","start":)";
                   put_coord(out, l.start);
                   out += R"(,"end":)";
                   put_coord(out, l.end);
                   out += '}';
                 },
                 [&](const CircleArc& c) {
                   out += R"({"type":"circle","center":)";
                   put_coord(out, c.center);
                   out += R"(,"normal":)";
                   put_direction(out, c.normal);
                   out += R"(,"radius":)" + format_real(c.radius);
                   out += R"(,"first":)" + format_real(c.first);
                   out += R"(,"last":)" + format_real(c.last) + "}";
                 },
                 [&](const EllipseArc& e) {
                   out += R"({"type":"ellipse","center":)";
                   put_coord(out, e.center);
                   out += R"(,"normal":)";
                   put_direction(out, e.normal);
                   out += R"(,"major_radius":)" + format_real(e.major_radius);
                   out += R"(,"minor_radius":)" + format_real(e.minor_radius);
                   out += R"(,"first":)" + format_real(e.first);
                   out += R"(,"last":)" + format_real(e.last) + "}";
                 },
                 [&](const BezierCurve& b) {
                   out += R"({"type":"bezier","poles":)";
                   put_point_list(out, b.poles);
                   out += R"(,"degree":)" + std::to_string(b.degree);
                   out += R"(,"first":)" + format_real(b.first);
                   out += R"(,"last":)" + format_real(b.last) + "}";
                 },
                 [&](const BsplineCurvePrimitive& b) {
                   const NurbsCurve& c = b.curve;
                   out += R"({"type":"bspline","poles":)";
                   put_point_list(out, c.poles);
                   out += R"(,"degree":)" + std::to_string(c.degree);
                   out += R"(,"knots":)";
                   put_reals(out, c.knot_vector.knots);
                   out += R"(,"mults":)";
                   put_ints(out, c.knot_vector.mults);
                   out += R"(,"weights":)";
                   put_runs(out, c.weights);
                   out += R"(,"is_periodic":)" + std::string(boolean(c.is_periodic));
                   out += R"(,"first":)" + format_real(c.first);
                   out += R"(,"last":)" + format_real(c.last) + "}";
                 },
             },
             curve);
}

}  // namespace

SolidDocument parse_document(std::string_view text, std::vector<std::string>* warnings) {
  std::vector<Violation> violations;
  std::vector<std::string> local_warnings;
  SolidDocument doc = read_document(text, violations, warnings ? *warnings : local_warnings);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    throw ParseError(v.face, v.path, v.message);
  }
  return doc;
}

std::string serialize_document(const SolidDocument& doc) {
  std::string out = "{";
  if (doc.name) out += R"("name":)" + json(*doc.name).dump() + ",";
  out += R"("faces":[)";
  for (std::size_t f = 0; f < doc.faces.size(); ++f) {
    out += f ? ",\n" : "\n";
    if (const auto* s = doc.faces[f].nurbs()) {
      put_surface(out, *s);
    } else {
      out += R"({"type":"primitive","curves":[)";
      const auto& curves = doc.faces[f].primitive()->curves;
      for (std::size_t k = 0; k < curves.size(); ++k) {
        if (k) out += ',';
        put_curve(out, curves[k]);
      }
      out += "]}";
    }
  }
  out += "\n]}\n";
  return out;
}

ValidityReport validate_document(const SolidDocument& doc, double chord_tolerance) {
  ValidityReport report;
  if (doc.faces.empty()) {
    report.violations.push_back({-1, "faces", "document needs at least one face"});
    return report;
  }
  const double tol = chord_tolerance * document_scale(doc);
  for (std::size_t f = 0; f < doc.faces.size(); ++f) {
    try {
      const TriMesh m = tessellate_face(doc.faces[f], tol);
      const bool finite = std::all_of(m.vertices.begin(), m.vertices.end(), [](const Vec3& p) { return is_finite(p); });
      if (m.triangles.empty() || !finite) {
        report.violations.push_back({static_cast<int>(f), "", "tessellation failure: empty or non-finite mesh"});
      }
    } catch (const std::exception& e) {
      report.violations.push_back({static_cast<int>(f), "", std::string("tessellation failure: ") + e.what()});
    }
  }
  return report;
}

ValidityReport validate_document(std::string_view text, double chord_tolerance) {
  ValidityReport report;
  SolidDocument doc = read_document(text, report.violations, report.warnings);
  if (!report.valid()) return report;
  ValidityReport geometric = validate_document(doc, chord_tolerance);
  report.violations = std::move(geometric.violations);
  return report;
}

std::string report_to_json(const ValidityReport& report) {
  nlohmann::ordered_json j;
  j["valid"] = report.valid();
  j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json e;
    e["face"] = v.face;
    e["path"] = v.path;
    e["message"] = v.message;
    j["violations"].push_back(std::move(e));
  }
  j["warnings"] = report.warnings;
  return j.dump();
}

}  // namespace hcad
