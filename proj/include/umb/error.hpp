#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace umb {

enum class ErrorCode {
  InvalidArgument,
  SingularMetric,
  SignatureMismatch,
  DegeneratePlane,
  LeftDomain,
  DegenerateSubspace,
  SamplingExhausted,
  CausalCharacterMismatch,
  RankDeficient,
  DegenerateInducedMetric,
  NonUnitDirection,
  UnsupportedAmbient,
  NewtonDiverged,
  IllConditionedFit,
  DegenerateFit,
  WrongCausalType,
  UnknownCatalogId,
  MalformedParameters,
  ParseError,
  IoError,
};

std::string_view code_name(ErrorCode code);

// Every failure in the library surfaces as this exception. `input` names the
// offending value (catalog id, parameter, file) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string input = {})
      : std::runtime_error(message), code_(code), input_(std::move(input)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& input() const noexcept { return input_; }

 private:
  ErrorCode code_;
  std::string input_;
};

}  // namespace umb
