#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psds {

enum class ErrorCode {
  // event validation
  NonPositiveDuration,
  NegativeOnset,
  UnknownFile,
  EventExceedsFileDuration,
  UnknownClass,
  // dataset / rates
  EmptyDataset,
  EmptyClassGroundTruth,
  ZeroLabelDuration,
  DegenerateClassCount,
  InvalidParameter,
  // table parsing and sweeps
  MalformedHeader,
  BadRow,
  NoOperatingPoints,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Data error raised by validation, parsing and rate computation.
///
/// `source` names the offending file (or is empty for in-memory input) and
/// `line` is the 1-based line number, 0 when not tied to a line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string source = {},
        std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string source_;
  std::size_t line_;
  std::string detail_;
};

}  // namespace psds
