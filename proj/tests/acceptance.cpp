// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hcad/cad_json.hpp"
#include "hcad/cloud_metrics.hpp"
#include "hcad/curation.hpp"
#include "hcad/kernels.hpp"
#include "hcad/mesh.hpp"
#include "hcad/nurbs.hpp"
#include "hcad/topo.hpp"
#include "oracles.hpp"

using namespace hcad;
namespace fs = std::filesystem;

namespace {

// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  int failed = 0;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// --- 1: representation selection sweep -----------------------------------------

struct SweepRig {
  PointCloud reference;
  std::vector<Vec3> samples;

  SweepRig() {
    PrimitiveFace square;
    const std::array<Vec3, 4> c = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{1, 1, 0}, Vec3{0, 1, 0}};
    for (std::size_t k = 0; k < 4; ++k) square.curves.push_back(LineSegment{c[k], c[(k + 1) % 4]});
    const TriMesh mesh = tessellate_face(FaceRecord{square}, 1e-3);
    reference = sample_surface_points(mesh, 2048, 11);
    samples = reference.points;
  }

  // Quadratic patch over the unit square with every pole lifted by `offset`.
  PointCloud reconstruction(double offset) const {
    NurbsSurface s;
    s.u_degree = s.v_degree = 2;
    s.u_knots = s.v_knots = KnotVector{{0.0, 1.0}, {3, 3}};
    s.poles = Grid<Vec3>(3, 3);
    s.weights = Grid<double>(3, 3, 1.0);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) s.poles(i, j) = {0.5 * double(i), 0.5 * double(j), offset};
    }
    const SurfaceEvaluator eval(s);
    PointCloud out;
    for (const Vec3& p : samples) out.points.push_back(eval.point(p.x, p.y));
    return out;
  }

  RepresentationDecision decide(double offset) const {
    return select_representation(reconstruction(offset), reference, kDefaultEpsilon);
  }
};

void criterion_representation(Check& chk) {
  const SweepRig rig;
  std::vector<std::pair<double, Representation>> seen;
  for (int k = 0; k <= 120; ++k) {
    const double target = 1e-5 * std::pow(1e3, k / 120.0);
    const auto d = rig.decide(std::sqrt(target / 2.0));
    seen.emplace_back(d.cd, d.decision);
    chk.expect(d.decision == decide_representation(d.cd), "decision disagrees with cd <= eps at cd=" + fmt(d.cd));
  }
  chk.expect(seen.front().first >= 0.9e-5 && seen.back().first <= 1.1e-2, "sweep does not span [1e-5, 1e-2]");
  std::sort(seen.begin(), seen.end());
  int flips = 0;
  for (std::size_t i = 1; i < seen.size(); ++i) flips += seen[i].second != seen[i - 1].second;
  chk.expect(flips == 1, "expected exactly one flip, got " + std::to_string(flips));

  // Narrow the offset down to adjacent doubles on either side of the threshold.
  double lo = std::sqrt(kDefaultEpsilon / 2.0) * 0.9;
  double hi = std::sqrt(kDefaultEpsilon / 2.0) * 1.1;
  chk.expect(rig.decide(lo).decision == Representation::keep_nurbs, "lower bracket not kept");
  chk.expect(rig.decide(hi).decision == Representation::fallback_primitive, "upper bracket not replaced");
  while (std::nextafter(lo, hi) < hi) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (rig.decide(mid).cd <= kDefaultEpsilon ? lo : hi) = mid;
  }
  const auto below = rig.decide(lo);
  const auto above = rig.decide(hi);
  chk.expect(below.cd <= kDefaultEpsilon && below.decision == Representation::keep_nurbs,
             "kept side of the flip has cd " + fmt(below.cd));
  chk.expect(above.cd > kDefaultEpsilon && above.decision == Representation::fallback_primitive,
             "replaced side of the flip has cd " + fmt(above.cd));
  chk.expect(std::abs(below.cd / kDefaultEpsilon - 1.0) < 1e-9 && std::abs(above.cd / kDefaultEpsilon - 1.0) < 1e-9,
             "flip is not at eps: " + fmt(below.cd) + " / " + fmt(above.cd));
  chk.expect(decide_representation(kDefaultEpsilon) == Representation::keep_nurbs, "cd == eps must keep NURBS");
  chk.expect(decide_representation(std::nextafter(kDefaultEpsilon, 1.0)) == Representation::fallback_primitive,
             "cd just above eps must fall back");
}

// --- 2: complexity score ---------------------------------------------------------

void criterion_score(Check& chk) {
  const std::array<double, 4> expected = {0.35, 0.3, 0.25, 0.1};
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<double, 4> e{};
    e[i] = 1.0;
    chk.expect(score_normalized(e).w == expected[i], std::string("unit vector ") + kFeatureNames[i]);
  }
  // Same check through raw features and corpus stats.
  CorpusStats stats;
  for (const char* name : kFeatureNames) stats[name] = {2.0, 6.0};
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<double, 4> raw = {2.0, 2.0, 2.0, 2.0};
    raw[i] = 6.0;
    const ComplexityFeatures f{raw[0], raw[1], raw[2], raw[3]};
    chk.expect(complexity_score(f, stats).w == expected[i], std::string("raw unit feature ") + kFeatureNames[i]);
  }
  chk.expect(classify_tier(0.12) == Tier::simple, "w = 0.12 must be simple");
  chk.expect(classify_tier(0.23) == Tier::moderate, "w = 0.23 must be moderate");
  chk.expect(classify_tier(std::nextafter(0.12, 1.0)) == Tier::moderate, "just above 0.12 must be moderate");
  chk.expect(classify_tier(std::nextafter(0.23, 1.0)) == Tier::complex, "just above 0.23 must be complex");
}

// --- 3: stratified curation ------------------------------------------------------

// Random solid made of unit cubes on a small lattice.
std::set<fixtures::Cell> random_cells(std::mt19937_64& rng) {
  std::set<fixtures::Cell> cells;
  const int nx = 2 + static_cast<int>(rng() % 4);
  const int ny = 1 + static_cast<int>(rng() % 3);
  const int nz = 1 + static_cast<int>(rng() % 2);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) {
      for (int z = 0; z < nz; ++z) {
        if (rng() % 4 != 0) cells.insert({x, y, z});
      }
    }
  }
  if (cells.empty()) cells.insert({0, 0, 0});
  return cells;
}

SolidDocument corpus_document(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> size(0.5, 4.0);
  switch (rng() % 10) {
    case 0:
      return fixtures::cube_document(size(rng));
    case 1:
      return fixtures::cylinder_document(size(rng), size(rng));
    case 2:
      return fixtures::sphere_document(size(rng));
    case 3: {
      const double outer = size(rng) + 0.5;
      return fixtures::washer_document(outer, outer * 0.4, size(rng));
    }
    case 4: {
      const double major = size(rng) + 1.0;
      return fixtures::torus_document(major, major * 0.3);
    }
    case 5:
      return fixtures::voxel_document(fixtures::ring_cells(), size(rng));
    case 6:
      return fixtures::voxel_document(fixtures::two_hole_cells(), size(rng));
    default:
      return fixtures::voxel_document(random_cells(rng), size(rng));
  }
}

void criterion_curation(Check& chk) {
  constexpr std::size_t kCorpus = 1000;
  constexpr std::size_t kTarget = 100;
  std::mt19937_64 rng(2024);
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < kCorpus; ++i) texts.push_back(serialize_document(corpus_document(rng)));

  std::vector<ComplexityFeatures> features(kCorpus);
  std::vector<int> ok(kCorpus, 1);
  const long n = static_cast<long>(kCorpus);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      features[i] = extract_features(texts[i]);
    } catch (const std::exception&) {
      ok[i] = 0;
    }
  }
  std::vector<ComplexityFeatures> usable;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < kCorpus; ++i) {
    if (!ok[i]) continue;
    usable.push_back(features[i]);
    char id[16];
    std::snprintf(id, sizeof id, "doc%04zu", i);
    ids.push_back(id);
  }
  chk.expect(usable.size() == kCorpus, std::to_string(kCorpus - usable.size()) + " documents failed feature extraction");

  const CorpusStats stats = corpus_stats(usable);
  std::vector<ScoredPart> parts;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const auto s = complexity_score(usable[i], stats);
    parts.push_back({ids[i], s.w, s.tier});
  }
  const CurationResult result = curate_corpus(parts, kTarget, TierRatios{}, 7);
  chk.expect(result.log.empty(), "tier shortfall: available " + std::to_string(result.available[0]) + "/" +
                                     std::to_string(result.available[1]) + "/" + std::to_string(result.available[2]));

  std::array<std::size_t, 3> counts{};
  std::size_t selected = 0;
  std::istringstream lines(manifest_jsonl(parts, result));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find("\"selected\":true") == std::string::npos) continue;
    ++selected;
    for (Tier t : {Tier::simple, Tier::moderate, Tier::complex}) {
      if (line.find("\"tier\":\"" + std::string(to_string(t)) + "\"") != std::string::npos) {
        ++counts[static_cast<std::size_t>(t)];
      }
    }
  }
  chk.expect(selected == kTarget, "manifest selects " + std::to_string(selected));
  chk.expect(counts == std::array<std::size_t, 3>{10, 50, 40},
             "tier counts " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" +
                 std::to_string(counts[2]) + ", want 10/50/40");
  chk.expect(curate_corpus(parts, kTarget, TierRatios{}, 7).selected == result.selected, "not deterministic");
}

// --- 4: through-holes ------------------------------------------------------------

void criterion_genus(Check& chk) {
  struct Case {
    const char* name;
    SolidDocument doc;
    int genus;
  };
  const std::vector<Case> cases = {
      {"cube", fixtures::cube_document(), 0},
      {"torus", fixtures::torus_document(2.0, 0.5), 1},
      {"two-hole slab", fixtures::voxel_document(fixtures::two_hole_cells()), 2},
  };
  for (const auto& c : cases) {
    const MetadataRecord m = compute_metadata(c.doc);
    chk.expect(m.watertight, std::string(c.name) + " is not watertight");
    chk.expect(m.genus == c.genus, std::string(c.name) + " genus " + std::to_string(m.genus));
  }
}

// --- 5: canonical serialization ----------------------------------------------------

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_serialization(Check& chk) {
  const fs::path dir = fs::path(HCAD_TEST_DATA) / "golden";
  int fixtures_seen = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.ends_with(".canonical.json") || e.path().extension() != ".json") continue;
    ++fixtures_seen;
    fs::path expected = e.path();
    expected.replace_extension(".canonical.json");
    try {
      chk.expect(serialize_document(parse_document(read_file(e.path()))) == read_file(expected),
                 name + " differs from its golden output");
    } catch (const std::exception& ex) {
      chk.expect(false, name + ": " + ex.what());
    }
  }
  chk.expect(fixtures_seen == 10, "expected 10 golden fixtures, found " + std::to_string(fixtures_seen));

  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const SolidDocument doc = fixtures::random_document(rng);
    const std::string once = serialize_document(parse_document(fixtures::to_loose_json(doc)));
    const std::string twice = serialize_document(parse_document(once));
    chk.expect(once == twice, "round trip not idempotent for random document " + std::to_string(i));
  }
}

// --- 6: NURBS properties -----------------------------------------------------------

KnotVector random_knots(std::mt19937_64& rng, int p) {
  std::uniform_real_distribution<double> step(0.1, 1.0);
  KnotVector kv{{step(rng) - 0.5}, {p + 1}};
  const int interior = static_cast<int>(rng() % 6);
  for (int k = 0; k <= interior; ++k) {
    kv.knots.push_back(kv.knots.back() + step(rng));
    kv.mults.push_back(k == interior ? p + 1 : 1 + static_cast<int>(rng() % static_cast<unsigned>(p)));
  }
  return kv;
}

NurbsCurve random_curve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-5, 5);
  std::uniform_real_distribution<double> weight(0.2, 5.0);
  NurbsCurve c;
  c.degree = 1 + static_cast<int>(rng() % 5);
  c.knot_vector = random_knots(rng, c.degree);
  const int n = required_pole_count(c.knot_vector, c.degree, false);
  for (int i = 0; i < n; ++i) {
    c.poles.push_back({coord(rng), coord(rng), coord(rng)});
    c.weights.push_back(weight(rng));
  }
  c.first = c.knot_vector.knots.front();
  c.last = c.knot_vector.knots.back();
  return c;
}

void criterion_nurbs(Check& chk) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const NurbsCurve c = random_curve(rng);
    const auto flat = c.knot_vector.expanded();
    const double u = c.first + unit(rng) * (c.last - c.first);
    const auto basis = basis_functions(c.knot_vector, c.degree, u);
    double sum = 0.0;
    for (double b : basis) sum += b;
    chk.expect(std::abs(sum - 1.0) <= 1e-12, "partition of unity off by " + fmt(sum - 1.0));

    // Local support: N_i vanishes exactly outside [t_i, t_{i+p+1}).
    chk.expect(basis.size() == c.poles.size(), "basis count differs from pole count");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (u < flat[i] || u >= flat[i + c.degree + 1]) chk.expect(basis[i] == 0.0, "nonzero basis outside its support");
    }

    const Vec3 a = curve_point(c, c.first);
    const Vec3 b = curve_point(c, c.last);
    chk.expect(norm(a - c.poles.front()) <= 1e-12, "start point not interpolated");
    chk.expect(norm(b - c.poles.back()) <= 1e-12, "end point not interpolated");
  }
  for (int t = 0; t < 200; ++t) {
    NurbsCurve c = random_curve(rng);
    const double u = c.first + unit(rng) * (c.last - c.first);
    const Vec3 before = curve_point(c, u);
    const double s = 0.01 + 100.0 * unit(rng);
    for (double& w : c.weights) w *= s;
    chk.expect(norm(curve_point(c, u) - before) <= 1e-12, "weight scaling moved the curve");
  }
  const NurbsCurve circle = fixtures::unit_circle();
  for (int k = 0; k < 1000; ++k) {
    const double u = circle.first + (circle.last - circle.first) * k / 999.0;
    chk.expect(std::abs(norm(curve_point(circle, u)) - 1.0) <= 1e-9, "rational circle off the unit circle");
  }
  for (int t = 0; t < 200; ++t) {
    const NurbsCurve c = random_curve(rng);
    const auto& knots = c.knot_vector.knots;
    double u = 0.0;
    // Stay clear of knots where the curve may only be C0.
    for (;;) {
      u = c.first + unit(rng) * (c.last - c.first);
      bool clear = true;
      for (double k : knots) clear = clear && std::abs(u - k) > 1e-3;
      if (clear) break;
    }
    const double h = 1e-6;
    const Vec3 fd = (curve_point(c, u + h) - curve_point(c, u - h)) / (2.0 * h);
    const Vec3 d = curve_derivative(c, u);
    const double scale = std::max(norm(d), norm(fd));
    chk.expect(norm(d - fd) <= 1e-5 * scale, "derivative differs from finite difference by " + fmt(norm(d - fd) / scale));
  }
}

// --- 7: metric axioms ------------------------------------------------------------

void criterion_metrics(Check& chk) {
  for (unsigned s = 0; s < 10; ++s) {
    const PointCloud a = oracle::random_cloud(300 + 50 * s, s);
    const PointCloud b = oracle::random_cloud(400, 1000 + s, 0.2, 1.2);
    chk.expect(chamfer_distance(a, a) == 0.0 && hausdorff_distance(a, a) == 0.0, "CD/HD identity");
    chk.expect(chamfer_distance(a, b) == chamfer_distance(b, a), "CD symmetry");
    chk.expect(hausdorff_distance(a, b) == hausdorff_distance(b, a), "HD symmetry");
    chk.expect(chamfer_distance(a, b) >= 0.0 && hausdorff_distance(a, b) >= 0.0, "CD/HD non-negative");
    const std::vector<PointCloud> p{a};
    const std::vector<PointCloud> q{b};
    const double j = jsd(p, q, kDefaultJsdGrid);
    chk.expect(jsd(p, p, kDefaultJsdGrid) == 0.0, "JSD identity");
    chk.expect(std::abs(j - jsd(q, p, kDefaultJsdGrid)) <= 1e-15, "JSD symmetry");
    chk.expect(j >= 0.0 && j <= std::numbers::ln2, "JSD outside [0, ln 2]");
  }

  std::mt19937_64 rng(77);
  for (unsigned s = 0; s < 20; ++s) {
    std::vector<PointCloud> ref;
    std::vector<PointCloud> gen;
    const std::size_t nr = 1 + rng() % 4;
    const std::size_t ng = 1 + rng() % 4;
    for (std::size_t k = 0; k < nr; ++k) ref.push_back(oracle::random_cloud(5 + rng() % 20, static_cast<unsigned>(rng())));
    for (std::size_t k = 0; k < ng; ++k) gen.push_back(oracle::random_cloud(5 + rng() % 20, static_cast<unsigned>(rng())));
    chk.expect(std::abs(mmd(ref, gen) - oracle::mmd(ref, gen)) <= 1e-12, "MMD differs from brute force");
  }

  for (std::size_t n : {1, 7, 64, 500, 1024, 4096}) {
    const PointCloud q = oracle::random_cloud(n, static_cast<unsigned>(n), -1.0, 1.0);
    const PointCloud t = oracle::random_cloud(n, static_cast<unsigned>(n + 1), -1.0, 1.0);
    const auto fast = kernels::parallel::nearest_squared_distances(q.points, t.points);
    const auto slow = kernels::serial::nearest_squared_distances(q.points, t.points);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(fast[i] - slow[i]));
    chk.expect(fast.size() == n && worst <= 1e-12, "nearest neighbour mismatch " + fmt(worst) + " at n=" + std::to_string(n));
  }
}

// --- 8: mass properties ----------------------------------------------------------

void criterion_mass(Check& chk) {
  const double pi = std::numbers::pi;
  const double r = 1.5;
  const double h = 4.0;
  const TriMesh cyl = tessellate_document(fixtures::cylinder_document(r, h));
  const TriMesh sph = tessellate_document(fixtures::sphere_document(r));
  auto within = [&](double got, double want, const char* what) {
    chk.expect(std::abs(got / want - 1.0) <= 0.01, std::string(what) + " " + fmt(got) + " vs " + fmt(want));
  };
  within(surface_area(cyl), 2 * pi * r * r + 2 * pi * r * h, "cylinder area");
  within(std::abs(signed_volume(cyl)), pi * r * r * h, "cylinder volume");
  within(surface_area(sph), 4 * pi * r * r, "sphere area");
  within(std::abs(signed_volume(sph)), 4.0 / 3.0 * pi * r * r * r, "sphere volume");

  for (const TriMesh* base : {&cyl, &sph}) {
    const double a = surface_area(*base);
    const double v = signed_volume(*base);
    for (double s : {0.25, 1.7, 3.0, 12.5}) {
      TriMesh m = *base;
      for (Vec3& p : m.vertices) p *= s;
      chk.expect(std::abs(surface_area(m) / (s * s * a) - 1.0) <= 1e-12, "area does not scale as s^2");
      chk.expect(std::abs(signed_volume(m) / (s * s * s * v) - 1.0) <= 1e-12, "volume does not scale as s^3");
    }
  }
}

// --- 9: end-to-end pipeline ------------------------------------------------------

void criterion_pipeline(Check& chk) {
  std::mt19937_64 rng(909);
  std::vector<std::string> texts;
  for (int i = 0; i < 50; ++i) texts.push_back(serialize_document(corpus_document(rng)));

  std::vector<ValidityReport> reports;
  for (const auto& t : texts) reports.push_back(validate_document(t));
  chk.expect(invalidity_ratio(reports) == 0.0, "synthetic documents failed validation");

  for (std::size_t i = 0; i < texts.size(); ++i) {
    try {
      const TriMesh mesh = tessellate_document(parse_document(texts[i]));
      const MetadataRecord m = compute_metadata(mesh);
      chk.expect(m.surface_area > 0.0, "document " + std::to_string(i) + " has no area");
    } catch (const std::exception& e) {
      chk.expect(false, "document " + std::to_string(i) + ": " + e.what());
    }
  }

  std::vector<DocumentPair> pairs;
  for (std::size_t i = 0; i < texts.size(); ++i) pairs.push_back({std::to_string(i), texts[i], texts[i]});
  const MetricReport r = evaluate_pairs(pairs, EvaluationOptions{});
  chk.expect(r.ir == 0.0, "IR = " + fmt(r.ir));
  chk.expect(r.cd == 0.0 && r.hd == 0.0 && r.jsd == 0.0 && r.mmd == 0.0,
             "self metrics not zero: cd " + fmt(r.cd) + " hd " + fmt(r.hd) + " jsd " + fmt(r.jsd) + " mmd " + fmt(r.mmd));
  chk.expect(r.valid_pairs == 50, "valid pairs " + std::to_string(r.valid_pairs));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "representation flips at cd = eps", 1.0, criterion_representation},
      {2, "complexity weights and tier bounds", 1.0, criterion_score},
      {3, "curated tier counts match ratios", 10.0, criterion_curation},
      {4, "through-hole counts", 5.0, criterion_genus},
      {5, "golden bytes and round-trip idempotence", 30.0, criterion_serialization},
      {6, "NURBS basis and curve properties", 60.0, criterion_nurbs},
      {7, "metric axioms and oracles", 120.0, criterion_metrics},
      {8, "mass properties and scaling", 60.0, criterion_mass},
      {9, "end-to-end pipeline self-consistency", 120.0, criterion_pipeline},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check chk;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(chk);
    } catch (const std::exception& e) {
      chk.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    chk.expect(secs < c.limit_s, "took " + fmt(secs) + " s, limit " + fmt(c.limit_s) + " s");
    const bool pass = chk.failed == 0;
    failed += !pass;
    std::printf("%s %d %s (%.3f s)\n", pass ? "PASS" : "FAIL", c.id, c.name, secs);
    for (const auto& f : chk.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
