#include "tlsw/error.hpp"

namespace tlsw {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedFilter: return "UnsupportedFilter";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NonDyadicLength: return "NonDyadicLength";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::AllNegativeRow: return "AllNegativeRow";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace tlsw
