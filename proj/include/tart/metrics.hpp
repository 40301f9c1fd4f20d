#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tart/score_model.hpp"

namespace tart {

/// One-to-one note correspondence between a reference and an estimate.
struct MatchResult {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (ref, est)
  std::vector<std::size_t> unmatched_ref;
  std::vector<std::size_t> unmatched_est;
};

/// Maximum-cardinality one-to-one matching under (equal pitch and
/// |onset difference| <= tol); among maximum matchings, the one minimizing the
/// total onset deviation. Both inputs must be onset-sorted.
MatchResult match_notes(const std::vector<NoteEvent>& ref,
                        const std::vector<NoteEvent>& est, double tol = 0.05);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Note-level precision/recall/F1 at the +-tol onset tolerance. Both sides
/// empty scores (1,1,1); an empty estimate against a non-empty reference
/// scores precision 0.
Prf prf50(const std::vector<NoteEvent>& ref, const std::vector<NoteEvent>& est,
          double tol = 0.05);

/// Mean absolute onset/offset deviation over matched pairs.
/// Throws ValidationError when there are no matches.
std::pair<double, double> timing_mae(const MatchResult& match,
                                     const std::vector<NoteEvent>& ref,
                                     const std::vector<NoteEvent>& est);

/// Mean absolute velocity difference (1-127 scale) over matched pairs.
double velocity_mae(const MatchResult& match, const std::vector<NoteEvent>& ref,
                    const std::vector<NoteEvent>& est);

/// Area under the uninterpolated precision-recall curve over all
/// (pitch, frame) cells, ranked by estimated score descending with stable
/// index tie-break. Throws ValidationError if the reference has no positive
/// cells or shapes differ.
double frame_average_precision(const PianoRoll& ref, const PianoRoll& est);

/// Fraction of notes whose assigned position reproduces the note's pitch.
/// Absent or out-of-range positions count as incorrect.
double pitch_accuracy(const std::vector<NoteEvent>& notes,
                      const std::vector<std::optional<FretPosition>>& positions,
                      const InstrumentConfig& config);

/// Fraction of positions exactly equal (string and fret) to the reference.
/// Pairs where either side is absent count as incorrect.
double tab_accuracy(const std::vector<std::optional<FretPosition>>& positions,
                    const std::vector<std::optional<FretPosition>>& reference);

}  // namespace tart
