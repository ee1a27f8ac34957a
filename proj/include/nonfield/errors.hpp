#pragma once

#include <stdexcept>
#include <string>

namespace nf {

// Every failure raised by the engine derives from Error and carries a code
// that the C API and the HTTP layer map one-to-one.
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  domain = 2,
  not_found = 3,
  parse = 4,
  invariant = 5,
  convergence = 6,
  io = 7,
  internal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error(ErrorCode::invalid_argument, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};
struct NotFound : Error {
  explicit NotFound(const std::string& w) : Error(ErrorCode::not_found, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorCode::parse, w) {}
};
struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& w) : Error(ErrorCode::invariant, w) {}
};
struct ConvergenceError : Error {
  ConvergenceError(const std::string& w, double best_residual)
      : Error(ErrorCode::convergence, w), best_residual(best_residual) {}
  double best_residual;
};

const char* error_code_name(ErrorCode c);

}  // namespace nf
