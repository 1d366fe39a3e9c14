#include "mfpca/error.hpp"

namespace mfpca {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidGrid: return "invalid grid";
    case ErrorCode::InvalidMatrix: return "invalid matrix";
    case ErrorCode::Dimension: return "dimension mismatch";
    case ErrorCode::DegenerateFunction: return "degenerate function";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::Truncation: return "invalid truncation";
    case ErrorCode::DegenerateSpectrum: return "degenerate spectrum";
    case ErrorCode::Config: return "configuration error";
    case ErrorCode::Spec: return "invalid split specification";
    case ErrorCode::SingularFit: return "singular fit";
    case ErrorCode::Schema: return "schema error";
    case ErrorCode::Validation: return "validation error";
    case ErrorCode::Io: return "I/O error";
  }
  return "unknown error";
}

}  // namespace mfpca
