#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hcad/nurbs.hpp"
#include "hcad/primitives.hpp"

namespace hcad {

enum class FaceKind { nurbs, primitive };

/// One face of the hybrid representation: an untrimmed NURBS patch or a
/// planar region bounded by analytic primitive curves.
struct FaceRecord {
  std::variant<NurbsSurface, PrimitiveFace> payload;

  FaceKind kind() const { return payload.index() == 0 ? FaceKind::nurbs : FaceKind::primitive; }
  const NurbsSurface* nurbs() const { return std::get_if<NurbsSurface>(&payload); }
  const PrimitiveFace* primitive() const { return std::get_if<PrimitiveFace>(&payload); }

  friend bool operator==(const FaceRecord&, const FaceRecord&) = default;
};

struct SolidDocument {
  std::optional<std::string> name;
  std::vector<FaceRecord> faces;

  friend bool operator==(const SolidDocument&, const SolidDocument&) = default;
};

}  // namespace hcad
