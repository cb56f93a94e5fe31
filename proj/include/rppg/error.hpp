#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rppg {

enum class ErrorCode {
  EmptyMask,
  DimensionMismatch,
  InvalidBand,
  SignalTooShort,
  InvalidArgument,
  DegenerateTrace,
  WindowTooLong,
  NoPeaks,
  EmptySequence,
  DegenerateSequence,
  MalformedBits,
  EmptySeries,
  ZeroVariance,
  EmptyBits,
  EmptyScores,
  TooFewCycles,
  BadCycle,
  EmptyCycleSet,
  FrequencyOutOfBand,
  BadCustomSignal,
  LengthMismatch,
  BadModel,
  SceneTooSmall,
  Io,
  Format,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// I/O and file-format problems, as opposed to domain failures.
inline bool is_io_error(ErrorCode code) {
  return code == ErrorCode::Io || code == ErrorCode::Format;
}

}  // namespace rppg
