#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phrecon {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fewer than four affinely independent points.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// No finite 2-dimensional pair with positive persistence.
class EmptyDiagram : public Error {
 public:
  using Error::Error;
};

/// A result that can only come from a bug upstream (e.g. an infeasible
/// persistent-volume problem for a genuine persistence pair).
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Non-manifold cleanup deleted every tetrahedron of a volume.
class EmptiedVolume : public Error {
 public:
  using Error::Error;
};

class NotManifold : public Error {
 public:
  using Error::Error;
};

class EmptySubset : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptyFile : public IoError {
 public:
  using IoError::IoError;
};

class ParseError : public IoError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : IoError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  /// 1-based line number for text formats, byte offset for binary payloads.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace phrecon
