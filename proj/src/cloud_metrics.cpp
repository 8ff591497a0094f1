#include "hcad/cloud_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <nlohmann/json.hpp>
#include <optional>

#include "hcad/errors.hpp"
#include "hcad/kernels.hpp"
#include "hcad/mesh.hpp"

namespace hcad {

namespace {

void require_points(const PointCloud& c, const char* what) {
  if (c.empty()) throw DegenerateInputError(std::string(what) + " point cloud is empty");
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::vector<double> histogram(std::span<const PointCloud> set, int grid) {
  std::vector<double> h(static_cast<std::size_t>(grid) * grid * grid, 0.0);
  auto cell = [grid](double x) {
    const double c = std::floor(x * grid);
    return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(grid - 1)));
  };
  double total = 0.0;
  for (const PointCloud& c : set) {
    for (const Vec3& p : c.points) {
      if (!is_finite(p)) throw DegenerateInputError("non-finite point in cloud");
      h[(cell(p.x) * grid + cell(p.y)) * grid + cell(p.z)] += 1.0;
      total += 1.0;
    }
  }
  if (total == 0.0) throw DegenerateInputError("point cloud set has no points");
  for (double& x : h) x /= total;
  return h;
}

Vec3 centroid(const PointCloud& c) {
  Vec3 sum{};
  for (const Vec3& p : c.points) sum += p;
  return sum / static_cast<double>(c.size());
}

// Sum of nearest squared distances from `queries` into `index`, in query order.
// Gives up with +inf once sum / divisor + offset exceeds `bound`.
double bounded_sum(std::span<const Vec3> queries, const kernels::parallel::NearestIndex& index, double divisor,
                   double offset, double bound) {
  constexpr std::size_t kBlock = 256;
  double sum = 0.0;
  for (std::size_t start = 0; start < queries.size(); start += kBlock) {
    const std::size_t stop = std::min(queries.size(), start + kBlock);
    for (std::size_t k = start; k < stop; ++k) sum += index.nearest_squared(queries[k]);
    if (sum / divisor + offset > bound) return std::numeric_limits<double>::infinity();
  }
  return sum;
}

// chamfer_distance(a, b), or +inf as soon as it is known to exceed `bound`.
// Partial sums of non-negative terms never decrease, so an unfinished sum is a
// valid lower bound and a finished one equals the unbounded result bit for bit.
double bounded_chamfer(const PointCloud& a, const kernels::parallel::NearestIndex& b_index, const PointCloud& b,
                       const kernels::parallel::NearestIndex& a_index, double bound) {
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ab = bounded_sum(a.points, b_index, na, 0.0, bound);
  if (std::isinf(ab)) return ab;
  const double ba = bounded_sum(b.points, a_index, nb, ab / na, bound);
  if (std::isinf(ba)) return ba;
  return ab / na + ba / nb;
}

struct PairDistances {
  double cd;
  double hd;
};

PairDistances pair_distances(const PointCloud& a, const PointCloud& b) {
  const auto ab = kernels::parallel::nearest_squared_distances(a.points, b.points);
  const auto ba = kernels::parallel::nearest_squared_distances(b.points, a.points);
  const double worst = std::max(*std::max_element(ab.begin(), ab.end()), *std::max_element(ba.begin(), ba.end()));
  return {mean(ab) + mean(ba), std::sqrt(worst)};
}

}  // namespace

double chamfer_distance(const PointCloud& a, const PointCloud& b) {
  require_points(a, "first");
  require_points(b, "second");
  return pair_distances(a, b).cd;
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  require_points(a, "first");
  require_points(b, "second");
  return pair_distances(a, b).hd;
}

double jsd(std::span<const PointCloud> reference, std::span<const PointCloud> generated, int grid) {
  if (reference.empty() || generated.empty()) throw DegenerateInputError("jsd needs non-empty sets");
  if (grid < 2) throw ConfigError("jsd grid must be at least 2");
  const auto p = histogram(reference, grid);
  const auto q = histogram(generated, grid);
  double kl_p = 0.0;
  double kl_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) kl_p += p[i] * std::log(p[i] / m);
    if (q[i] > 0.0) kl_q += q[i] * std::log(q[i] / m);
  }
  return std::clamp(0.5 * kl_p + 0.5 * kl_q, 0.0, std::log(2.0));
}

double mmd(std::span<const PointCloud> reference, std::span<const PointCloud> generated) {
  if (reference.empty() || generated.empty()) throw DegenerateInputError("mmd needs non-empty sets");
  for (const auto& c : reference) require_points(c, "reference");
  for (const auto& c : generated) require_points(c, "generated");
  std::vector<kernels::parallel::NearestIndex> ref_index;
  std::vector<kernels::parallel::NearestIndex> gen_index;
  for (const auto& c : reference) ref_index.emplace_back(c.points);
  for (const auto& c : generated) gen_index.emplace_back(c.points);
  std::vector<Vec3> gen_centroid;
  for (const auto& c : generated) gen_centroid.push_back(centroid(c));

  std::vector<double> best(reference.size(), std::numeric_limits<double>::infinity());
  const long nr = static_cast<long>(reference.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < nr; ++i) {
    // Candidates with nearby centroids first, so the bound tightens early.
    const Vec3 c = centroid(reference[i]);
    std::vector<std::size_t> order(generated.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return squared_distance(gen_centroid[a], c) < squared_distance(gen_centroid[b], c);
    });
    for (std::size_t k : order) {
      best[i] = std::min(best[i], bounded_chamfer(generated[k], ref_index[i], reference[i], gen_index[k], best[i]));
    }
  }
  double total = 0.0;
  for (double b : best) total += b;
  return total / static_cast<double>(reference.size());
}

double invalidity_ratio(std::span<const ValidityReport> reports) {
  if (reports.empty()) throw DegenerateInputError("invalidity ratio of zero reports");
  const auto bad = std::count_if(reports.begin(), reports.end(), [](const ValidityReport& r) { return !r.valid(); });
  return static_cast<double>(bad) / static_cast<double>(reports.size());
}

MetricReport evaluate_pairs(std::span<const DocumentPair> pairs, const EvaluationOptions& options) {
  if (pairs.empty()) throw DegenerateInputError("no document pairs to evaluate");
  const long n = static_cast<long>(pairs.size());
  std::vector<ValidityReport> reports(pairs.size());
  std::vector<std::optional<PointCloud>> gen(pairs.size());
  std::vector<PointCloud> ref(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());

  auto cloud = [&](const SolidDocument& doc) {
    return sample_points(tessellate_document(doc, options.chord_tolerance), options.n_points, options.seed);
  };

#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const DocumentPair& pair = pairs[static_cast<std::size_t>(i)];
    try {
      ref[i] = cloud(parse_document(pair.reference));
      reports[i] = validate_document(pair.generated, options.chord_tolerance);
      if (reports[i].valid()) {
        try {
          gen[i] = cloud(parse_document(pair.generated));
        } catch (const Error& e) {
          reports[i].violations.push_back({-1, "", std::string("tessellation failure: ") + e.what()});
        }
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  MetricReport out;
  out.sample_count = pairs.size();
  out.ir = invalidity_ratio(reports);
  std::vector<PointCloud> gens;
  std::vector<PointCloud> refs;
  double cd = 0.0;
  double hd = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!gen[i]) continue;
    const PairDistances d = pair_distances(*gen[i], ref[i]);
    cd += d.cd;
    hd += d.hd;
    gens.push_back(std::move(*gen[i]));
    refs.push_back(ref[i]);
  }
  out.valid_pairs = gens.size();
  if (gens.empty()) {
    out.cd = out.hd = out.jsd = out.mmd = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.cd = cd / static_cast<double>(gens.size());
  out.hd = hd / static_cast<double>(gens.size());
  out.jsd = jsd(refs, gens, options.jsd_grid);
  out.mmd = mmd(refs, gens);
  return out;
}

std::string metric_report_to_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  auto put = [&j](const char* key, double v) {
    if (std::isfinite(v)) {
      j[key] = v;
    } else {
      j[key] = nullptr;
    }
  };
  put("cd", 100.0 * r.cd);
  put("hd", r.hd);
  put("jsd", 100.0 * r.jsd);
  put("mmd", 100.0 * r.mmd);
  put("ir", r.ir);
  j["n"] = r.sample_count;
  j["valid"] = r.valid_pairs;
  return j.dump();
}

}  // namespace hcad
