#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace segspec {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  PlusSpace,
  EmptyCandidate,
  NonRationalEndpoints,
  NonUniformWeights,
  InsufficientSpan,
  BumpOutOfRange,
  NotInH2,
  WrongRegime,
  NotInjective,
  NotConstant,
  NoLineFound,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries the module that raised it and
// a stable code; the CLI prints "<module>/<code>: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string module, ErrorCode code, const std::string& message);

  const std::string& module() const noexcept { return module_; }
  ErrorCode code() const noexcept { return code_; }
  std::string qualified_code() const;

 private:
  std::string module_;
  ErrorCode code_;
};

}  // namespace segspec
