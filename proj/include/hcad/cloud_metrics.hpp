#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcad/cad_json.hpp"
#include "hcad/trimesh.hpp"

namespace hcad {

inline constexpr int kDefaultJsdGrid = 32;
inline constexpr std::size_t kDefaultPointCount = 8192;

/// Mean squared nearest-neighbour distance A->B plus the same for B->A.
double chamfer_distance(const PointCloud& a, const PointCloud& b);

/// Largest nearest-neighbour distance in either direction (unsquared).
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

/// Jensen-Shannon divergence (natural log) between the grid^3 occupancy
/// histograms of the two sets over [0,1]^3. Points outside are clamped to
/// the boundary cells.
double jsd(std::span<const PointCloud> reference, std::span<const PointCloud> generated,
           int grid = kDefaultJsdGrid);

/// Mean over references of the smallest chamfer distance to any generated cloud.
double mmd(std::span<const PointCloud> reference, std::span<const PointCloud> generated);

/// Fraction of reports that carry at least one violation.
double invalidity_ratio(std::span<const ValidityReport> reports);

struct MetricReport {
  double cd = 0.0;
  double hd = 0.0;
  double jsd = 0.0;
  double mmd = 0.0;
  double ir = 0.0;
  std::size_t sample_count = 0;  // pairs
  std::size_t valid_pairs = 0;
};

struct DocumentPair {
  std::string name;
  std::string generated;  // document text
  std::string reference;
};

struct EvaluationOptions {
  std::size_t n_points = kDefaultPointCount;
  std::uint64_t seed = 0;
  int jsd_grid = kDefaultJsdGrid;
  double chord_tolerance = kDefaultChordTolerance;
};

/// Per-pair CD/HD averaged over pairs with a valid generated document;
/// set-level JSD and MMD over those clouds; IR over all generated documents.
/// Every document is sampled with the same seed. Throws ParseError or
/// TessellationError if a reference document is invalid. Geometric fields
/// are NaN when no generated document is valid.
MetricReport evaluate_pairs(std::span<const DocumentPair> pairs, const EvaluationOptions& options = {});

/// {"cd","hd","jsd","mmd","ir","n","valid"} with cd, jsd and mmd multiplied by 100.
/// NaN is written as null.
std::string metric_report_to_json(const MetricReport& report);

}  // namespace hcad
