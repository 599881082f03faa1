#pragma once

#include <stdexcept>
#include <string>

namespace elemconj {

// Every failure the library can signal, split by what went wrong rather than
// where.  Config-shaped problems (bad ring data, bad indices, out-of-domain
// parameters) and math-shaped problems (a guarded identity not holding) map
// to different exit codes in the CLI, so they get distinct types here.
enum class ErrorKind {
  InvalidLambda,       // lambda * conj(lambda) != 1, or lambda not in the ring
  InvalidInvolution,   // candidate involution is not a ring automorphism of order <= 2
  DimMismatch,         // matrix/vector shapes disagree
  NotInvertible,       // determinant is not a unit
  BadIndex,            // index outside the allowed range, or i == +-j where forbidden
  FormParamViolation,  // long-root parameter outside lambda^.. * Lambda
  NotIsotropic,        // vector fails the isotropy requirement f(v,v) in Lambda
  BadVector,           // vector fails a structural precondition (e.g. v_{-1} != 0)
  GuardFailed,         // a guarded intermediate identity failed numerically
  NotMember,           // matrix is not in the expected group
  ExpansionMismatch,   // closed-form expansion disagrees with the exact matrix
  BudgetExceeded,      // enumeration/realization budget exhausted
  ParseError,          // malformed JSON or flag value
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidLambda: return "InvalidLambda";
    case ErrorKind::InvalidInvolution: return "InvalidInvolution";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::FormParamViolation: return "FormParamViolation";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::BadVector: return "BadVector";
    case ErrorKind::GuardFailed: return "GuardFailed";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::ExpansionMismatch: return "ExpansionMismatch";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

// Guarded identities: mandatory in tests, toggleable in long CLI campaigns.
// A disabled guard skips the (sometimes costly) check entirely.
struct GuardPolicy {
  bool enabled = true;
};

inline void guard(const GuardPolicy& gp, bool ok, const std::string& what) {
  if (gp.enabled && !ok) fail(ErrorKind::GuardFailed, what);
}

}  // namespace elemconj
