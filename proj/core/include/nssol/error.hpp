#ifndef NSSOL_ERROR_HPP
#define NSSOL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nssol {

/// Failure categories surfaced by the library. The CLI maps `Config` and
/// `Validation` to exit code 2 and every numeric kind to exit code 3.
enum class ErrorKind {
  Config,
  Validation,
  Domain,
  OutOfRange,
  SingularCoefficient,
  StepFailure,
  StencilOutOfDomain,
  NonFiniteField,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by user input rather than numerics.
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::Config || kind_ == ErrorKind::Validation;
  }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::OutOfRange: return "out_of_range";
    case ErrorKind::SingularCoefficient: return "singular_coefficient";
    case ErrorKind::StepFailure: return "step_failure";
    case ErrorKind::StencilOutOfDomain: return "stencil_out_of_domain";
    case ErrorKind::NonFiniteField: return "non_finite_field";
  }
  return "unknown";
}

}  // namespace nssol

#endif  // NSSOL_ERROR_HPP
