#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hcad/grid.hpp"
#include "hcad/nurbs.hpp"
#include "hcad/vec3.hpp"

// Data-parallel inner loops. The serial versions are the reference
// implementations the parallel ones are tested against.
namespace hcad::kernels {

namespace serial {

/// For every query, squared distance to its nearest target (brute force).
std::vector<double> nearest_squared_distances(std::span<const Vec3> queries,
                                              std::span<const Vec3> targets);

/// Surface samples at every (u[i], v[j]).
Grid<Vec3> evaluate_grid(const SurfaceEvaluator& eval, std::span<const double> u,
                         std::span<const double> v);

}  // namespace serial

namespace parallel {

/// Median-split k-d tree over a fixed target set for repeated exact
/// nearest-neighbour queries.
class NearestIndex {
 public:
  explicit NearestIndex(std::span<const Vec3> targets);

  double nearest_squared(const Vec3& q) const;
  /// nearest_squared for every query, OpenMP over the queries.
  std::vector<double> query(std::span<const Vec3> queries) const;

 private:
  struct Node {
    double split = 0.0;
    int axis = -1;  // -1 marks a leaf
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
  };
  std::uint32_t build(std::uint32_t begin, std::uint32_t end);
  void search(std::uint32_t node, const Vec3& q, double& best) const;

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
};

/// Same values as the serial kernel, via a NearestIndex over the targets
/// and an OpenMP loop over the queries.
std::vector<double> nearest_squared_distances(std::span<const Vec3> queries,
                                              std::span<const Vec3> targets);

/// OpenMP loop over rows of the parameter grid.
Grid<Vec3> evaluate_grid(const SurfaceEvaluator& eval, std::span<const double> u,
                         std::span<const double> v);

}  // namespace parallel

}  // namespace hcad::kernels
