#include "relaxsim/errors.hpp"

namespace relaxsim {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Compatibility: return "CompatibilityError";
    case ErrorKind::Singularity: return "SingularityError";
    case ErrorKind::Admissibility: return "AdmissibilityError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::CflViolation: return "CflViolation";
    case ErrorKind::Stability: return "StabilityError";
    case ErrorKind::NotAvailable: return "NotAvailable";
    case ErrorKind::NotImplemented: return "NotImplemented";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

void rethrow_with_context(const Error& e, const std::string& context) {
  const std::string msg = context + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::Compatibility: throw CompatibilityError(msg);
    case ErrorKind::Singularity: throw SingularityError(msg);
    case ErrorKind::Admissibility: throw AdmissibilityError(msg);
    case ErrorKind::Domain: throw DomainError(msg);
    case ErrorKind::CflViolation: throw CflViolation(msg);
    case ErrorKind::Stability: throw StabilityError(msg);
    case ErrorKind::NotAvailable: throw NotAvailable(msg);
    case ErrorKind::NotImplemented: throw NotImplemented(msg);
    case ErrorKind::GridMismatch: throw GridMismatch(msg);
    case ErrorKind::Config: throw ConfigError(msg);
  }
  throw Error(e.kind(), msg);
}

}  // namespace relaxsim
