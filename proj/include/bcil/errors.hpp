#pragma once

#include <stdexcept>
#include <string>

namespace bcil {

// Error taxonomy shared by all modules. The category maps onto the CLI
// exit codes: usage=2, data=3, numeric=4, physics=5.
enum class ErrorKind {
  Usage,
  // data errors
  EmptyCorpus,
  TooShort,
  TrajectoryTooShort,
  UnknownGlyph,
  ShapeMismatch,
  TapeMismatch,
  InvalidScheme,
  Degenerate,
  Io,
  // numeric errors
  NonFinite,
  Diverged,
  // physics errors
  Unreachable,
  SafetyStop,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Usage:
        return 2;
      case ErrorKind::NonFinite:
      case ErrorKind::Diverged:
        return 4;
      case ErrorKind::Unreachable:
      case ErrorKind::SafetyStop:
        return 5;
      default:
        return 3;
    }
  }

 private:
  ErrorKind kind_;
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::TrajectoryTooShort: return "TrajectoryTooShort";
    case ErrorKind::UnknownGlyph: return "UnknownGlyph";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::TapeMismatch: return "TapeMismatch";
    case ErrorKind::InvalidScheme: return "InvalidScheme";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::Io: return "Io";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Diverged: return "Diverged";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::SafetyStop: return "SafetyStop";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, std::string(kind_name(kind)) + ": " + msg);
}

}  // namespace bcil
