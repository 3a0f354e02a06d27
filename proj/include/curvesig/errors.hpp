#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace curvesig {

// Base type for all library errors. `kind()` is a stable machine-readable tag;
// `exit_code()` is the process status the CLI maps the error to
// (1 = validation error, 2 = computation error).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message, int exit_code)
      : std::runtime_error(message), kind_(std::move(kind)), exit_code_(exit_code) {}

  const std::string& kind() const { return kind_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string kind_;
  int exit_code_;
};

struct DegenerateCurve : Error {
  explicit DegenerateCurve(const std::string& m) : Error("DegenerateCurve", m, 2) {}
};

struct InvalidQuery : Error {
  explicit InvalidQuery(const std::string& m) : Error("InvalidQuery", m, 1) {}
};

struct EssentialMismatch : Error {
  explicit EssentialMismatch(const std::string& m) : Error("EssentialMismatch", m, 2) {}
};

struct NoCorrespondence : Error {
  explicit NoCorrespondence(const std::string& m) : Error("NoCorrespondence", m, 2) {}
};

struct NotMonotone : Error {
  explicit NotMonotone(const std::string& m) : Error("NotMonotone", m, 2) {}
};

struct RejectionExhausted : Error {
  explicit RejectionExhausted(const std::string& m) : Error("RejectionExhausted", m, 2) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError", m, 1) {}
};

}  // namespace curvesig
