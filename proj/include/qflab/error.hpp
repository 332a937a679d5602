#pragma once

#include <stdexcept>
#include <string>

namespace qflab {

enum class ErrorKind {
  not_positive_definite,
  invalid_discriminant,
  not_primitive,
  not_squarefree,
  not_fundamental,
  no_convergence,
  consistency,
  budget_exceeded,
  out_of_range,
  singular_weight,
  inadmissible,
  insufficient_data,
  invalid_argument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::not_positive_definite: return "not_positive_definite";
    case ErrorKind::invalid_discriminant: return "invalid_discriminant";
    case ErrorKind::not_primitive: return "not_primitive";
    case ErrorKind::not_squarefree: return "not_squarefree";
    case ErrorKind::not_fundamental: return "not_fundamental";
    case ErrorKind::no_convergence: return "no_convergence";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::budget_exceeded: return "budget_exceeded";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::singular_weight: return "singular_weight";
    case ErrorKind::inadmissible: return "inadmissible";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (and the CLI)
/// can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qflab
