#pragma once

#include <stdexcept>
#include <string>

namespace tart {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input bytes (MIDI, WAV, JSON, tab text). Messages name the
/// offending path or byte offset.
struct ParseError : Error {
  using Error::Error;
};

/// Structurally valid data that violates a contract (bad ranges, shape
/// mismatches, pre-condition failures).
struct ValidationError : Error {
  using Error::Error;
};

/// Musically unsatisfiable request: unreachable pitch, unplayable chord.
struct DomainError : Error {
  using Error::Error;
};

/// Training diverged or produced non-finite loss.
struct TrainError : Error {
  using Error::Error;
};

}  // namespace tart
