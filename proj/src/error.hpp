#pragma once

#include <stdexcept>
#include <string>

namespace heatctl {

/// Error category carried by every exception thrown from the core library.
/// The C API maps these one-to-one onto heatctl_status codes.
enum class ErrorCode {
  invalid_argument,      // rejected input (preconditions, schema)
  singular_system,       // SPD solve on an indefinite/singular matrix
  hypothesis_violation,  // a stated mathematical hypothesis does not hold
  size_limit,            // problem exceeds a configured size cap
  resolution,            // quadrature/truncation certificate failed
  no_convergence,        // iterative kernel failed to converge
  io                     // file system failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SingularSystemError : public Error {
 public:
  SingularSystemError(double smallest_eigenvalue, const std::string& msg)
      : Error(ErrorCode::singular_system, msg), smallest_eigenvalue_(smallest_eigenvalue) {}
  double smallest_eigenvalue() const noexcept { return smallest_eigenvalue_; }

 private:
  double smallest_eigenvalue_;
};

}  // namespace heatctl
