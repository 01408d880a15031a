#include "reefstitch/error.hpp"

namespace reefstitch {

const char* errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::DuplicateObservation: return "DuplicateObservation";
    case ErrorCode::InconsistentSpecies: return "InconsistentSpecies";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::BadBinCount: return "BadBinCount";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FrameOutOfRange: return "FrameOutOfRange";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::SingularAwbSystem: return "SingularAwbSystem";
    case ErrorCode::DegenerateChannel: return "DegenerateChannel";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NoValidSample: return "NoValidSample";
    case ErrorCode::CanvasTooLarge: return "CanvasTooLarge";
    case ErrorCode::UndefinedHeading: return "UndefinedHeading";
    case ErrorCode::TooFewFish: return "TooFewFish";
    case ErrorCode::ZeroDuration: return "ZeroDuration";
    case ErrorCode::SinglePoint: return "SinglePoint";
    case ErrorCode::FrameOutsideTexture: return "FrameOutsideTexture";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

int exitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::MissingColumn:
    case ErrorCode::DuplicateObservation:
    case ErrorCode::InconsistentSpecies:
    case ErrorCode::NonFiniteInput:
    case ErrorCode::BadBinCount:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::FrameOutOfRange:
    case ErrorCode::ValidationError:
      return 2;
    case ErrorCode::SingularTransform:
    case ErrorCode::SingularAwbSystem:
    case ErrorCode::DegenerateChannel:
    case ErrorCode::DegenerateConfiguration:
    case ErrorCode::NoValidSample:
    case ErrorCode::CanvasTooLarge:
    case ErrorCode::UndefinedHeading:
    case ErrorCode::TooFewFish:
    case ErrorCode::ZeroDuration:
    case ErrorCode::SinglePoint:
    case ErrorCode::FrameOutsideTexture:
      return 3;
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::CorruptFile:
    case ErrorCode::IoError:
      return 4;
  }
  return 1;
}

}  // namespace reefstitch
