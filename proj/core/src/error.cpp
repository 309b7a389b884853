#include "segspec/error.hpp"

namespace segspec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PlusSpace: return "PlusSpaceError";
    case ErrorCode::EmptyCandidate: return "EmptyCandidate";
    case ErrorCode::NonRationalEndpoints: return "NonRationalEndpoints";
    case ErrorCode::NonUniformWeights: return "NonUniformWeights";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::BumpOutOfRange: return "BumpOutOfRange";
    case ErrorCode::NotInH2: return "NotInH2";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NotConstant: return "NotConstant";
    case ErrorCode::NoLineFound: return "NoLineFound";
  }
  return "Unknown";
}

Error::Error(std::string module, ErrorCode code, const std::string& message)
    : std::runtime_error(message), module_(std::move(module)), code_(code) {}

std::string Error::qualified_code() const {
  return module_ + "/" + std::string(to_string(code_));
}

}  // namespace segspec
