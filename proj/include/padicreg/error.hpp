#pragma once

#include <stdexcept>
#include <string>

namespace padicreg {

// Exit-code contract shared by the library and the CLI.
enum class ErrorCode : int {
  kOk = 0,
  kVerificationFailure = 2,
  kPrecondition = 3,
  kSchema = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A documented precondition of an operation does not hold (mismatched
/// parameters, non-unit inversion, divergent series, insufficient precision).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::kPrecondition, what) {}
};

/// Malformed external input (JSON files, CLI values).
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what)
      : Error(ErrorCode::kSchema, what) {}
};

}  // namespace padicreg
