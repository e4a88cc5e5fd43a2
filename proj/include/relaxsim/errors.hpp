#pragma once

#include <stdexcept>
#include <string>

namespace relaxsim {

enum class ErrorKind {
  Compatibility,
  Singularity,
  Admissibility,
  Domain,
  CflViolation,
  Stability,
  NotAvailable,
  NotImplemented,
  GridMismatch,
  Config,
};

const char* to_string(ErrorKind kind);

//! Base of every error the library raises. The kind survives rethrowing with
//! added context (see rethrow_with_context).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define RELAXSIM_DEFINE_ERROR(Name, Kind)                                 \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

RELAXSIM_DEFINE_ERROR(CompatibilityError, Compatibility)
RELAXSIM_DEFINE_ERROR(SingularityError, Singularity)
RELAXSIM_DEFINE_ERROR(AdmissibilityError, Admissibility)
RELAXSIM_DEFINE_ERROR(DomainError, Domain)
RELAXSIM_DEFINE_ERROR(CflViolation, CflViolation)
RELAXSIM_DEFINE_ERROR(StabilityError, Stability)
RELAXSIM_DEFINE_ERROR(NotAvailable, NotAvailable)
RELAXSIM_DEFINE_ERROR(NotImplemented, NotImplemented)
RELAXSIM_DEFINE_ERROR(GridMismatch, GridMismatch)
RELAXSIM_DEFINE_ERROR(ConfigError, Config)

#undef RELAXSIM_DEFINE_ERROR

//! Throws an error of the same concrete type as `e`, with `context` prefixed.
[[noreturn]] void rethrow_with_context(const Error& e, const std::string& context);

}  // namespace relaxsim
