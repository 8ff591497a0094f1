#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "hcad/errors.hpp"
#include "hcad/kernels.hpp"

namespace hcad::kernels::parallel {

namespace {

constexpr std::uint32_t kLeafSize = 8;

}  // namespace

NearestIndex::NearestIndex(std::span<const Vec3> pts) : points_(pts.begin(), pts.end()) {
  if (pts.empty()) throw DegenerateInputError("nearest neighbour query against empty cloud");
  nodes_.reserve(2 * pts.size() / kLeafSize + 1);
  build(0, static_cast<std::uint32_t>(points_.size()));
}

std::uint32_t NearestIndex::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({});
  nodes_[id].begin = begin;
  nodes_[id].end = end;
  if (end - begin <= kLeafSize) return id;

  Vec3 lo = points_[begin];
  Vec3 hi = lo;
  for (std::uint32_t i = begin; i < end; ++i) {
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], points_[i][a]);
      hi[a] = std::max(hi[a], points_[i][a]);
    }
  }
  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
  }
  if (!(hi[axis] > lo[axis])) return id;  // all points coincide

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(points_.begin() + begin, points_.begin() + mid, points_.begin() + end,
                   [axis](const Vec3& p, const Vec3& q) { return p[axis] < q[axis]; });
  const double split = points_[mid][axis];
  const std::uint32_t left = build(begin, mid);
  const std::uint32_t right = build(mid, end);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void NearestIndex::search(std::uint32_t id, const Vec3& q, double& best) const {
  const Node& node = nodes_[id];
  if (node.axis < 0) {
    for (std::uint32_t k = node.begin; k < node.end; ++k) {
      const double d = squared_distance(q, points_[k]);
      if (d < best) best = d;
    }
    return;
  }
  // Left holds coordinates <= split, right holds coordinates >= split.
  const double diff = q[node.axis] - node.split;
  search(diff < 0.0 ? node.left : node.right, q, best);
  if (diff * diff < best) search(diff < 0.0 ? node.right : node.left, q, best);
}

double NearestIndex::nearest_squared(const Vec3& q) const {
  double best = std::numeric_limits<double>::infinity();
  search(0, q, best);
  return best;
}

std::vector<double> NearestIndex::query(std::span<const Vec3> queries) const {
  std::vector<double> out(queries.size());
  const long n = static_cast<long>(queries.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = nearest_squared(queries[i]);
  return out;
}

std::vector<double> nearest_squared_distances(std::span<const Vec3> queries,
                                              std::span<const Vec3> targets) {
  return NearestIndex(targets).query(queries);
}

Grid<Vec3> evaluate_grid(const SurfaceEvaluator& eval, std::span<const double> u,
                         std::span<const double> v) {
  Grid<Vec3> out(u.size(), v.size());
  std::exception_ptr failure;
  const long rows = static_cast<long>(u.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < rows; ++i) {
    try {
      for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = eval.point(u[i], v[j]);
    } catch (...) {
#pragma omp critical(hcad_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace hcad::kernels::parallel
