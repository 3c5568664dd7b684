#include "cfusion/error.hpp"

namespace cfusion {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::QuaternionUnsupported: return "QuaternionUnsupported";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

} // namespace cfusion
