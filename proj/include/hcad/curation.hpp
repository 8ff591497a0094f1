#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcad/errors.hpp"
#include "hcad/mesh.hpp"
#include "hcad/trimesh.hpp"

namespace hcad {

/// Largest chamfer distance at which a NURBS reconstruction is kept.
inline constexpr double kDefaultEpsilon = 6e-4;

class LexError : public Error {
 public:
  using Error::Error;
};

/// Requested sample is larger than the corpus.
class SizeError : public Error {
 public:
  using Error::Error;
};

// --- hybrid representation ------------------------------------------------------

enum class Representation { keep_nurbs, fallback_primitive };

struct RepresentationDecision {
  Representation decision = Representation::keep_nurbs;
  double cd = 0.0;
};

/// Keeps the NURBS face iff chamfer_distance(nurbs, reference) <= epsilon.
RepresentationDecision select_representation(const PointCloud& nurbs_cloud, const PointCloud& reference_cloud,
                                             double epsilon = kDefaultEpsilon);
/// The decision rule on its own.
Representation decide_representation(double cd, double epsilon = kDefaultEpsilon);

// --- complexity scoring --------------------------------------------------------

/// Number of JSON lexical tokens: punctuation, strings, numbers, literals.
std::size_t token_count(std::string_view text);

enum class Tier { simple, moderate, complex };

std::string_view to_string(Tier tier);
Tier tier_from_string(std::string_view name);

inline constexpr double kSimpleUpper = 0.12;
inline constexpr double kModerateUpper = 0.23;
inline constexpr std::array<double, 4> kFeatureWeights = {0.35, 0.3, 0.25, 0.1};
inline constexpr std::array<const char*, 4> kFeatureNames = {"token_count", "through_holes", "area_volume_ratio",
                                                             "bbox_diag"};

struct ComplexityFeatures {
  double token_count = 0.0;
  double through_holes = 0.0;
  /// +inf when the part has no enclosed volume.
  double area_volume_ratio = 0.0;
  double bbox_diag = 0.0;

  std::array<double, 4> values() const { return {token_count, through_holes, area_volume_ratio, bbox_diag}; }
};

struct FeatureRange {
  double min = 0.0;
  double max = 0.0;
};

/// Per-feature min/max keyed by kFeatureNames.
using CorpusStats = std::map<std::string, FeatureRange, std::less<>>;

/// Min/max over the corpus; infinite ratios are left out of the range.
CorpusStats corpus_stats(std::span<const ComplexityFeatures> corpus);

/// Min-max normalized features clamped to [0,1]. Constant features map to 0;
/// an infinite ratio maps to 1. Throws ConfigError if a feature is missing.
std::array<double, 4> normalize_features(const ComplexityFeatures& features, const CorpusStats& stats);

Tier classify_tier(double w);

struct ComplexityScore {
  double w = 0.0;
  Tier tier = Tier::simple;
};

ComplexityScore complexity_score(const ComplexityFeatures& features, const CorpusStats& stats);
/// Weighted sum of already normalized features.
ComplexityScore score_normalized(const std::array<double, 4>& normalized);

/// Features of a document text: lexer token count, plus holes, area/volume and
/// AABB diagonal of its mesh scaled into the 2x2x2 box.
ComplexityFeatures extract_features(std::string_view text, double chord_tolerance = kDefaultChordTolerance);

// --- corpus sampling ----------------------------------------------------------

struct TierRatios {
  double simple = 0.10;
  double moderate = 0.50;
  double complex = 0.40;

  std::array<double, 3> values() const { return {simple, moderate, complex}; }
};

struct ScoredPart {
  std::string id;
  double w = 0.0;
  Tier tier = Tier::simple;
};

struct CurationResult {
  std::vector<std::string> selected;  // sorted by id
  std::array<std::size_t, 3> quotas{};
  std::array<std::size_t, 3> available{};
  std::vector<std::string> log;
};

/// Per-tier quotas by largest remainder. A tier with too few members gives
/// its shortfall to the others in proportion to their ratios.
std::array<std::size_t, 3> tier_quotas(std::size_t target, const TierRatios& ratios,
                                       const std::array<std::size_t, 3>& available, std::vector<std::string>* log);

/// Seeded sampling without replacement inside each tier.
CurationResult curate_corpus(std::span<const ScoredPart> parts, std::size_t target, const TierRatios& ratios = {},
                             std::uint64_t seed = 0);

/// One {"id","w","tier","selected"} line per part, sorted by id.
std::string manifest_jsonl(std::span<const ScoredPart> parts, const CurationResult& result);
std::string stats_to_json(const CorpusStats& stats);
CorpusStats stats_from_json(std::string_view text);

}  // namespace hcad
