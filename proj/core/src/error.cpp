#include "psds/error.hpp"

#include <utility>

namespace psds {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDuration: return "NonPositiveDuration";
    case ErrorCode::NegativeOnset: return "NegativeOnset";
    case ErrorCode::UnknownFile: return "UnknownFile";
    case ErrorCode::EventExceedsFileDuration: return "EventExceedsFileDuration";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptyClassGroundTruth: return "EmptyClassGroundTruth";
    case ErrorCode::ZeroLabelDuration: return "ZeroLabelDuration";
    case ErrorCode::DegenerateClassCount: return "DegenerateClassCount";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::BadRow: return "BadRow";
    case ErrorCode::NoOperatingPoints: return "NoOperatingPoints";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           const std::string& source, std::size_t line) {
  std::string out;
  if (!source.empty()) {
    out += source;
    if (line > 0) out += ":" + std::to_string(line);
    out += ": ";
  } else if (line > 0) {
    out += "line " + std::to_string(line) + ": ";
  }
  out += to_string(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::string source,
             std::size_t line)
    : std::runtime_error(format_message(code, message, source, line)),
      code_(code),
      source_(std::move(source)),
      line_(line),
      detail_(std::move(message)) {}

}  // namespace psds
