#pragma once

#include <stdexcept>
#include <string>

namespace lptwist {

enum class ErrorKind {
  NotAssociative,
  NoIdentity,
  NoInverse,
  DomainMismatch,
  BadUnits,
  BadInverse,
  NotNormalized,
  CocycleIdentityFails,
  NotExact,
  MismatchedCarriers,
  NotAUnit,
  BadExponent,
  TooLarge,
  SearchTooLarge,
  NotAnIsometry,
  SearchInconclusive,
  NotPrincipal,
  NotABisection,
  NotCovering,
  PhaseInconsistent,
  BadSupport,
  BadTheta,
  ParseError,
  ValidationError,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::BadUnits: return "BadUnits";
    case ErrorKind::BadInverse: return "BadInverse";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::CocycleIdentityFails: return "CocycleIdentityFails";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::MismatchedCarriers: return "MismatchedCarriers";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SearchTooLarge: return "SearchTooLarge";
    case ErrorKind::NotAnIsometry: return "NotAnIsometry";
    case ErrorKind::SearchInconclusive: return "SearchInconclusive";
    case ErrorKind::NotPrincipal: return "NotPrincipal";
    case ErrorKind::NotABisection: return "NotABisection";
    case ErrorKind::NotCovering: return "NotCovering";
    case ErrorKind::PhaseInconsistent: return "PhaseInconsistent";
    case ErrorKind::BadSupport: return "BadSupport";
    case ErrorKind::BadTheta: return "BadTheta";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

// All library failures carry a kind plus a human-readable witness message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lptwist
