#include "lifs/errors.hpp"

namespace lifs {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BackendMismatch: return "BackendMismatch";
    case ErrorCode::NegativeRadius: return "NegativeRadius";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::BadRate: return "BadRate";
    case ErrorCode::BadWord: return "BadWord";
    case ErrorCode::DeadEnd: return "DeadEnd";
    case ErrorCode::EmptyIa: return "EmptyIa";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::IntegerBeta: return "IntegerBeta";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::OutOfSpace: return "OutOfSpace";
    case ErrorCode::PackingOverflow: return "PackingOverflow";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace lifs
