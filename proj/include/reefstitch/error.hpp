#pragma once

#include <stdexcept>
#include <string>

namespace reefstitch {

// Failure classes map onto the CLI exit codes:
//   parse/validation -> 2, numeric degeneracy -> 3, filesystem/format -> 4.
enum class ErrorCode {
  // parse / validation
  ParseError,
  MissingColumn,
  DuplicateObservation,
  InconsistentSpecies,
  NonFiniteInput,
  BadBinCount,
  DimensionMismatch,
  FrameOutOfRange,
  ValidationError,
  // numeric degeneracy
  SingularTransform,
  SingularAwbSystem,
  DegenerateChannel,
  DegenerateConfiguration,
  NoValidSample,
  CanvasTooLarge,
  UndefinedHeading,
  TooFewFish,
  ZeroDuration,
  SinglePoint,
  FrameOutsideTexture,
  // i/o
  UnsupportedFormat,
  CorruptFile,
  IoError,
};

const char* errorCodeName(ErrorCode code);

// 2 = parse/validation, 3 = numeric failure, 4 = i/o.
int exitCodeFor(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace reefstitch
