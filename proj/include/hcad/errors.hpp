#pragma once

#include <stdexcept>
#include <string>

namespace hcad {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter outside the valid evaluation domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Knot/pole/multiplicity structure is inconsistent.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Input has no extent, area or points to work with.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Geometry could not be meshed into finite, non-empty triangles.
class TessellationError : public Error {
 public:
  using Error::Error;
};

/// Face kind the mesher cannot handle (e.g. non-planar primitive loops).
class UnsupportedFaceError : public TessellationError {
 public:
  using TessellationError::TessellationError;
};

/// Mesh is not a closed 2-manifold.
class ManifoldError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Document-level parse or validation failure. Carries the offending face
/// index (-1 for envelope-level problems) and a field path.
class ParseError : public Error {
 public:
  ParseError(int face, std::string path, const std::string& message)
      : Error(format(face, path, message)), face_(face), path_(std::move(path)) {}

  int face() const { return face_; }
  const std::string& path() const { return path_; }

 private:
  static std::string format(int face, const std::string& path, const std::string& message) {
    std::string out;
    if (face >= 0) out += "faces[" + std::to_string(face) + "]";
    if (!path.empty()) {
      if (!out.empty()) out += '.';
      out += path;
    }
    if (!out.empty()) out += ": ";
    return out + message;
  }

  int face_;
  std::string path_;
};

}  // namespace hcad
