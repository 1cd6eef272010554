#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordlat {

enum class ErrorKind {
  InvalidArgument,
  UnorderedThresholds,
  ArityMismatch,
  UnknownLink,
  UnknownFamily,
  DimensionMismatch,
  IndexOutOfRange,
  UnsupportedModel,
  SearchFailed,
  QuadratureUnstable,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnorderedThresholds: return "UnorderedThresholds";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UnknownLink: return "UnknownLink";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::SearchFailed: return "SearchFailed";
    case ErrorKind::QuadratureUnstable: return "QuadratureUnstable";
  }
  return "Unknown";
}

// All library failures are reported through this one exception type; the
// kind lets callers (the CLI in particular) map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Numerical failures as opposed to bad input.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::QuadratureUnstable || kind_ == ErrorKind::SearchFailed;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace ordlat
