#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tart {

/// One pitched note: MIDI pitch, onset/offset in seconds, velocity 1-127.
struct NoteEvent {
  int pitch = 0;
  double onset = 0.0;
  double offset = 0.0;
  int velocity = 64;

  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

/// Unified expressive-technique taxonomy: nine techniques plus `other`.
enum class TechniqueLabel {
  kPicking,
  kSweepPicking,
  kAlternatePicking,
  kLegato,  // hammer-on / pull-off
  kSlide,
  kBend,
  kVibrato,
  kPalmMute,
  kHarmonic,
  kOther,
};

inline constexpr int kNumTechniques = 10;

std::string_view to_string(TechniqueLabel label);
std::optional<TechniqueLabel> technique_from_string(std::string_view name);

/// String 1 is the highest-pitched string (top line of rendered tab).
/// Fret 0 is open, measured relative to the capo.
struct FretPosition {
  int string = 1;
  int fret = 0;

  friend bool operator==(const FretPosition&, const FretPosition&) = default;
  friend auto operator<=>(const FretPosition&, const FretPosition&) = default;
};

/// Tuning, fret count and capo; defines which pitches are reachable where.
struct InstrumentConfig {
  std::vector<int> open_pitches{64, 59, 55, 50, 45, 40};  // highest first
  int max_fret = 19;
  int capo = 0;

  int num_strings() const { return static_cast<int>(open_pitches.size()); }

  friend bool operator==(const InstrumentConfig&,
                         const InstrumentConfig&) = default;
};

/// Throws ValidationError if the config violates its invariants.
void validate_config(const InstrumentConfig& config);

/// NoteEvent plus the optional per-note annotations accumulated by the
/// pipeline stages. `unrepaired` marks notes whose pitch could not be mapped
/// to any position; such notes keep position = absent when serialized.
struct AnnotatedNote {
  NoteEvent note;
  std::optional<TechniqueLabel> technique;
  std::optional<FretPosition> position;
  std::optional<double> confidence;
  bool unrepaired = false;

  friend bool operator==(const AnnotatedNote&, const AnnotatedNote&) = default;
};

/// One track's worth of annotations; maps 1:1 onto a JAMS-subset file.
/// `has_annotation` distinguishes a file with an empty `note_tab` annotation
/// from a file with no annotations at all. `sample_rate` is pipeline
/// bookkeeping and is not serialized.
struct TrackAnnotation {
  std::string title;
  double duration = 0.0;
  InstrumentConfig config;
  std::vector<AnnotatedNote> notes;
  bool has_annotation = true;
  double sample_rate = 0.0;
};

/// Frame-level note activations over the full MIDI pitch range.
struct PianoRoll {
  int num_pitches = 128;
  int num_frames = 0;
  double frame_hop = 0.01;
  std::vector<double> values;  // [pitch * num_frames + frame], in [0,1]

  double& at(int pitch, int frame) { return values[static_cast<std::size_t>(pitch) * num_frames + frame]; }
  double at(int pitch, int frame) const { return values[static_cast<std::size_t>(pitch) * num_frames + frame]; }
};

PianoRoll make_piano_roll(int num_frames, double frame_hop);

/// MIDI pitch sounded by `position`: open pitch + capo + fret.
/// Throws ValidationError for positions outside the config.
int pitch_of(const FretPosition& position, const InstrumentConfig& config);

/// All positions that sound `pitch`, sorted by string ascending.
/// Empty when the pitch is unreachable.
std::vector<FretPosition> candidates_for(int pitch,
                                         const InstrumentConfig& config);

/// Sorts by onset, ties by pitch ascending (the track invariant order).
void sort_notes(std::vector<AnnotatedNote>& notes);
void sort_notes(std::vector<NoteEvent>& notes);

/// Checks every track invariant (sortedness, position validity, pitch
/// consistency for non-unrepaired notes); throws ValidationError.
void validate_track(const TrackAnnotation& track);

/// Parses the JAMS subset. Notes are re-sorted by onset on read. Errors name
/// the offending JSON path.
TrackAnnotation read_jams(const std::string& bytes);

/// Serializes with canonical key order and 6-decimal fixed floats, so that
/// write(read(write(x))) == write(x) byte for byte.
std::string write_jams(const TrackAnnotation& track);

}  // namespace tart
