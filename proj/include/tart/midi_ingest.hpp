#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tart/score_model.hpp"

namespace tart {

/// A fixed-length window of notes, onsets re-based to the window start and
/// offsets clipped to the window end.
struct Segment {
  double start = 0.0;
  double duration = 0.0;
  std::vector<NoteEvent> notes;
};

/// Decodes a Standard MIDI File (format 0 or 1, PPQ division). All tracks and
/// channels are merged, the tempo map is applied to convert ticks to seconds,
/// note-on with velocity 0 acts as note-off, and notes still sounding at
/// end-of-track are closed there. Output is sorted by (onset, pitch).
/// Parse errors carry the byte offset.
std::vector<NoteEvent> parse_smf(std::span<const std::uint8_t> bytes);

/// Closed-form segment count: floor((total_dur - window) / hop) + 1 windows at
/// starts 0, hop, 2*hop, ...; recordings shorter than one window yield a
/// single zero-padded segment. A note joins every segment whose span contains
/// its onset; offsets are clipped to the window end.
std::vector<Segment> segment(const std::vector<NoteEvent>& notes,
                             double total_dur, double window = 10.0,
                             double hop = 1.0);

/// Shifts every pitch by `semitones` (timing and velocity untouched).
/// Throws ValidationError listing notes that would leave 0..127.
std::vector<NoteEvent> pitch_shift_notes(const std::vector<NoteEvent>& notes,
                                         int semitones);

/// Shifts each onset and offset independently by a uniform draw in
/// [-max_shift, +max_shift] from the seeded generator (note i consumes draws
/// 2i and 2i+1). Onsets clamp to >= 0 and offsets to onset + 1 ms minimum.
/// Output is re-sorted by (onset, pitch).
std::vector<NoteEvent> onset_jitter(const std::vector<NoteEvent>& notes,
                                    double max_shift, std::uint64_t seed);

}  // namespace tart
