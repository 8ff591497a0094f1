#include "hcad/curation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <random>

#include "hcad/cad_json.hpp"
#include "hcad/cloud_metrics.hpp"
#include "hcad/rng.hpp"
#include "hcad/topo.hpp"

namespace hcad {

Representation decide_representation(double cd, double epsilon) {
  return cd <= epsilon ? Representation::keep_nurbs : Representation::fallback_primitive;
}

RepresentationDecision select_representation(const PointCloud& nurbs_cloud, const PointCloud& reference_cloud,
                                             double epsilon) {
  RepresentationDecision d;
  d.cd = chamfer_distance(nurbs_cloud, reference_cloud);
  d.decision = decide_representation(d.cd, epsilon);
  return d;
}

// --- lexer --------------------------------------------------------------------

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::size_t lex_string(std::string_view s, std::size_t i) {
  ++i;  // opening quote
  while (i < s.size()) {
    const char c = s[i];
    if (c == '"') return i + 1;
    if (static_cast<unsigned char>(c) < 0x20) throw LexError("control character in string at offset " + std::to_string(i));
    if (c == '\\') {
      if (i + 1 >= s.size()) break;
      const char e = s[i + 1];
      if (e == 'u') {
        for (std::size_t k = 2; k < 6; ++k) {
          if (i + k >= s.size() || !std::isxdigit(static_cast<unsigned char>(s[i + k]))) {
            throw LexError("bad unicode escape at offset " + std::to_string(i));
          }
        }
        i += 6;
        continue;
      }
      if (std::string_view("\"\\/bfnrt").find(e) == std::string_view::npos) {
        throw LexError("bad escape at offset " + std::to_string(i));
      }
      i += 2;
      continue;
    }
    ++i;
  }
  throw LexError("unterminated string");
}

std::size_t lex_number(std::string_view s, std::size_t i) {
  const std::size_t start = i;
  auto digits = [&] {
    const std::size_t from = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    return i - from;
  };
  if (s[i] == '-') ++i;
  if (i < s.size() && s[i] == '0') {
    ++i;
  } else if (digits() == 0) {
    throw LexError("bad number at offset " + std::to_string(start));
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    if (digits() == 0) throw LexError("bad fraction at offset " + std::to_string(start));
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (digits() == 0) throw LexError("bad exponent at offset " + std::to_string(start));
  }
  return i;
}

}  // namespace

std::size_t token_count(std::string_view text) {
  if (!nlohmann::json::accept(text.begin(), text.end())) throw LexError("malformed JSON");
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    ++count;
    if (std::string_view("{}[]:,").find(c) != std::string_view::npos) {
      ++i;
    } else if (c == '"') {
      i = lex_string(text, i);
    } else if (c == '-' || is_digit(c)) {
      i = lex_number(text, i);
    } else if (text.substr(i, 4) == "true" || text.substr(i, 4) == "null") {
      i += 4;
    } else if (text.substr(i, 5) == "false") {
      i += 5;
    } else {
      throw LexError("unexpected character at offset " + std::to_string(i));
    }
  }
  return count;
}

// --- scoring ------------------------------------------------------------------

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::simple:
      return "simple";
    case Tier::moderate:
      return "moderate";
    case Tier::complex:
      return "complex";
  }
  return "simple";
}

Tier tier_from_string(std::string_view name) {
  if (name == "simple") return Tier::simple;
  if (name == "moderate") return Tier::moderate;
  if (name == "complex") return Tier::complex;
  throw ConfigError("unknown tier '" + std::string(name) + "'");
}

Tier classify_tier(double w) {
  if (w <= kSimpleUpper) return Tier::simple;
  if (w <= kModerateUpper) return Tier::moderate;
  return Tier::complex;
}

CorpusStats corpus_stats(std::span<const ComplexityFeatures> corpus) {
  CorpusStats stats;
  for (std::size_t f = 0; f < kFeatureNames.size(); ++f) {
    FeatureRange r{INFINITY, -INFINITY};
    for (const auto& c : corpus) {
      const double v = c.values()[f];
      if (!std::isfinite(v)) continue;
      r.min = std::min(r.min, v);
      r.max = std::max(r.max, v);
    }
    if (r.min > r.max) r = {0.0, 0.0};
    stats[kFeatureNames[f]] = r;
  }
  return stats;
}

std::array<double, 4> normalize_features(const ComplexityFeatures& features, const CorpusStats& stats) {
  std::array<double, 4> out{};
  const auto raw = features.values();
  for (std::size_t f = 0; f < raw.size(); ++f) {
    const auto it = stats.find(kFeatureNames[f]);
    if (it == stats.end()) throw ConfigError(std::string("corpus stats missing feature '") + kFeatureNames[f] + "'");
    const FeatureRange& r = it->second;
    if (std::isinf(raw[f]) && raw[f] > 0) {
      out[f] = 1.0;
    } else if (!(r.max > r.min)) {
      out[f] = 0.0;
    } else {
      out[f] = std::clamp((raw[f] - r.min) / (r.max - r.min), 0.0, 1.0);
    }
  }
  return out;
}

ComplexityScore score_normalized(const std::array<double, 4>& normalized) {
  double w = 0.0;
  for (std::size_t f = 0; f < normalized.size(); ++f) w += kFeatureWeights[f] * normalized[f];
  return {w, classify_tier(w)};
}

ComplexityScore complexity_score(const ComplexityFeatures& features, const CorpusStats& stats) {
  return score_normalized(normalize_features(features, stats));
}

ComplexityFeatures extract_features(std::string_view text, double chord_tolerance) {
  ComplexityFeatures f;
  f.token_count = static_cast<double>(token_count(text));
  const SolidDocument doc = parse_document(text);
  const auto [mesh, transform] = normalize_to_box(tessellate_document(doc, chord_tolerance));
  const MetadataRecord meta = compute_metadata(mesh);
  f.through_holes = meta.watertight ? meta.genus : 0;
  f.area_volume_ratio = (meta.volume && *meta.volume > 0.0) ? meta.surface_area / *meta.volume : INFINITY;
  f.bbox_diag = std::sqrt(meta.length * meta.length + meta.width * meta.width + meta.height * meta.height);
  return f;
}

// --- sampling ----------------------------------------------------------------

namespace {

// Splits `amount` over `weights` by largest remainder; ties go to the lower index.
std::array<std::size_t, 3> apportion(std::size_t amount, const std::array<double, 3>& weights) {
  std::array<std::size_t, 3> out{};
  const double total = weights[0] + weights[1] + weights[2];
  if (amount == 0 || total <= 0.0) return out;
  std::array<double, 3> frac{};
  std::size_t given = 0;
  for (std::size_t t = 0; t < 3; ++t) {
    const double exact = static_cast<double>(amount) * weights[t] / total;
    out[t] = static_cast<std::size_t>(std::floor(exact));
    frac[t] = exact - std::floor(exact);
    given += out[t];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t k = 0; given < amount; k = (k + 1) % 3) {
    if (weights[order[k]] <= 0.0) continue;
    ++out[order[k]];
    ++given;
  }
  return out;
}

}  // namespace

std::array<std::size_t, 3> tier_quotas(std::size_t target, const TierRatios& ratios,
                                       const std::array<std::size_t, 3>& available, std::vector<std::string>* log) {
  const auto r = ratios.values();
  for (double x : r) {
    if (!(x >= 0.0)) throw ConfigError("tier ratios must be non-negative");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) throw ConfigError("tier ratios must sum to 1");
  const std::size_t total = available[0] + available[1] + available[2];
  if (target > total) {
    throw SizeError("target size " + std::to_string(target) + " exceeds corpus size " + std::to_string(total));
  }
  auto quota = apportion(target, r);
  std::array<bool, 3> capped{};
  for (;;) {
    std::size_t shortfall = 0;
    for (std::size_t t = 0; t < 3; ++t) {
      if (quota[t] > available[t]) {
        if (log) {
          log->push_back("tier " + std::string(to_string(static_cast<Tier>(t))) + " has " +
                         std::to_string(available[t]) + " parts for a quota of " + std::to_string(quota[t]) +
                         "; redistributing " + std::to_string(quota[t] - available[t]));
        }
        shortfall += quota[t] - available[t];
        quota[t] = available[t];
        capped[t] = true;
      }
    }
    if (shortfall == 0) break;
    std::array<double, 3> weights{};
    bool any_weight = false;
    for (std::size_t t = 0; t < 3; ++t) {
      if (!capped[t] && quota[t] < available[t]) {
        weights[t] = r[t];
        any_weight = any_weight || r[t] > 0.0;
      }
    }
    if (!any_weight) {
      for (std::size_t t = 0; t < 3; ++t) weights[t] = (!capped[t] && quota[t] < available[t]) ? 1.0 : 0.0;
    }
    const auto extra = apportion(shortfall, weights);
    for (std::size_t t = 0; t < 3; ++t) quota[t] += extra[t];
  }
  return quota;
}

CurationResult curate_corpus(std::span<const ScoredPart> parts, std::size_t target, const TierRatios& ratios,
                             std::uint64_t seed) {
  CurationResult result;
  std::array<std::vector<std::string>, 3> members;
  for (const auto& p : parts) members[static_cast<std::size_t>(p.tier)].push_back(p.id);
  for (std::size_t t = 0; t < 3; ++t) {
    std::sort(members[t].begin(), members[t].end());
    result.available[t] = members[t].size();
  }
  result.quotas = tier_quotas(target, ratios, result.available, &result.log);

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < 3; ++t) {
    seeded_shuffle(members[t], rng);
    result.selected.insert(result.selected.end(), members[t].begin(),
                           members[t].begin() + static_cast<long>(result.quotas[t]));
  }
  std::sort(result.selected.begin(), result.selected.end());
  return result;
}

std::string manifest_jsonl(std::span<const ScoredPart> parts, const CurationResult& result) {
  std::vector<const ScoredPart*> sorted;
  for (const auto& p : parts) sorted.push_back(&p);
  std::sort(sorted.begin(), sorted.end(), [](const ScoredPart* a, const ScoredPart* b) { return a->id < b->id; });
  std::string out;
  for (const ScoredPart* p : sorted) {
    nlohmann::ordered_json j;
    j["id"] = p->id;
    j["w"] = p->w;
    j["tier"] = to_string(p->tier);
    j["selected"] = std::binary_search(result.selected.begin(), result.selected.end(), p->id);
    out += j.dump() + "\n";
  }
  return out;
}

std::string stats_to_json(const CorpusStats& stats) {
  nlohmann::ordered_json j;
  for (const char* name : kFeatureNames) {
    const auto it = stats.find(name);
    if (it == stats.end()) continue;
    j[name] = {{"min", it->second.min}, {"max", it->second.max}};
  }
  return j.dump();
}

CorpusStats stats_from_json(std::string_view text) {
  CorpusStats stats;
  try {
    const auto j = nlohmann::json::parse(text.begin(), text.end());
    for (auto it = j.begin(); it != j.end(); ++it) {
      stats[it.key()] = {it->at("min").get<double>(), it->at("max").get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad stats file: ") + e.what());
  }
  return stats;
}

}  // namespace hcad
