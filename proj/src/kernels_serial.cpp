#include <limits>

#include "hcad/errors.hpp"
#include "hcad/kernels.hpp"

namespace hcad::kernels::serial {

std::vector<double> nearest_squared_distances(std::span<const Vec3> queries,
                                              std::span<const Vec3> targets) {
  if (targets.empty()) throw DegenerateInputError("nearest neighbour query against empty cloud");
  std::vector<double> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& t : targets) {
      const double d = squared_distance(queries[i], t);
      if (d < best) best = d;
    }
    out[i] = best;
  }
  return out;
}

Grid<Vec3> evaluate_grid(const SurfaceEvaluator& eval, std::span<const double> u,
                         std::span<const double> v) {
  Grid<Vec3> out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = eval.point(u[i], v[j]);
  }
  return out;
}

}  // namespace hcad::kernels::serial
