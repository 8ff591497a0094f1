#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcad/document.hpp"
#include "hcad/mesh.hpp"

namespace hcad {

/// One entry of a validity report. `face` is -1 for envelope-level problems.
struct Violation {
  int face = -1;
  std::string path;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidityReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool valid() const { return violations.empty(); }
};

/// (value, frequency) run of control-point weights.
struct WeightRun {
  double value = 1.0;
  std::int64_t count = 0;

  friend bool operator==(const WeightRun&, const WeightRun&) = default;
};

/// Nearest double to `value` printed with six decimals (round-half-even on the exact binary value).
double round6(double value);
/// "%.6f" formatting with negative zero printed as "0.000000".
std::string format_fixed6(double value);
/// Shortest round-trip decimal: fixed notation with at least one fractional
/// digit for exponents in [-4, 16), otherwise d.ddde+XX.
std::string format_real(double value);

/// Rounds to 6 decimals, then groups consecutive equal values.
std::vector<WeightRun> compress_weights(std::span<const double> weights);
std::vector<double> expand_weights(std::span<const WeightRun> runs);

/// Parses and fully validates the structural invariants of a document.
/// Throws ParseError (face index + field path) on the first violation.
/// Unknown keys are ignored; a warning is appended to `warnings` if given.
SolidDocument parse_document(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Canonical text: compact JSON, one face per line, fixed key order,
/// coordinates with exactly six decimals, weights as runs.
std::string serialize_document(const SolidDocument& doc);

/// Never throws for bad input; problems become report entries. A document is
/// valid when it parses, passes every structural check, and every face
/// meshes to finite, non-empty geometry.
ValidityReport validate_document(std::string_view text, double chord_tolerance = kDefaultChordTolerance);
ValidityReport validate_document(const SolidDocument& doc, double chord_tolerance = kDefaultChordTolerance);

/// {"valid":..,"violations":[{"face":..,"path":..,"message":..}],"warnings":[..]}
std::string report_to_json(const ValidityReport& report);

}  // namespace hcad
