#include "tart/midi_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "tart/errors.hpp"
#include "tart/rng.hpp"

namespace tart {

namespace {

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("smf: " + msg + " at byte " + std::to_string(pos));
  }

  std::uint8_t u8() {
    if (pos >= bytes.size()) fail("unexpected end of file");
    return bytes[pos++];
  }

  std::uint32_t be(int n) {
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 8) | u8();
    return v;
  }

  /// Variable-length quantity, at most 4 bytes.
  std::uint32_t vlq() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      std::uint8_t b = u8();
      v = (v << 7) | (b & 0x7F);
      if (!(b & 0x80)) return v;
    }
    fail("variable-length quantity longer than 4 bytes");
  }

  void skip(std::size_t n) {
    if (pos + n > bytes.size()) fail("unexpected end of file");
    pos += n;
  }
};

struct RawNote {
  std::uint64_t on_tick;
  std::uint64_t off_tick;
  int pitch;
  int velocity;
};

struct TempoEvent {
  std::uint64_t tick;
  std::uint32_t us_per_quarter;
};

// Seconds at a given tick under a piecewise-constant tempo map.
class TempoMap {
 public:
  explicit TempoMap(std::vector<TempoEvent> events, int ppq) : ppq_(ppq) {
    std::stable_sort(events.begin(), events.end(),
                     [](const TempoEvent& a, const TempoEvent& b) {
                       return a.tick < b.tick;
                     });
    double seconds = 0.0;
    std::uint64_t tick = 0;
    std::uint32_t tempo = 500000;  // 120 BPM default
    anchors_.push_back({0, 0.0, tempo});
    for (const TempoEvent& ev : events) {
      seconds += ticks_to_seconds(ev.tick - tick, tempo);
      tick = ev.tick;
      tempo = ev.us_per_quarter;
      anchors_.push_back({tick, seconds, tempo});
    }
  }

  double seconds_at(std::uint64_t tick) const {
    const Anchor* a = &anchors_.front();
    for (const Anchor& cand : anchors_) {
      if (cand.tick <= tick) a = &cand;
      else break;
    }
    return a->seconds + ticks_to_seconds(tick - a->tick, a->tempo);
  }

 private:
  struct Anchor {
    std::uint64_t tick;
    double seconds;
    std::uint32_t tempo;
  };

  double ticks_to_seconds(std::uint64_t ticks, std::uint32_t tempo) const {
    return static_cast<double>(ticks) * static_cast<double>(tempo) /
           (static_cast<double>(ppq_) * 1e6);
  }

  int ppq_;
  std::vector<Anchor> anchors_;
};

// Parses one MTrk chunk, appending raw notes and tempo events.
void parse_track(Cursor& cur, std::size_t chunk_len, std::vector<RawNote>& notes,
                 std::vector<TempoEvent>& tempos) {
  const std::size_t end = cur.pos + chunk_len;
  std::uint64_t tick = 0;
  std::uint8_t running_status = 0;
  // Open notes per (channel, pitch); simultaneous re-strikes stack.
  std::map<std::pair<int, int>, std::vector<RawNote>> open;

  auto close_note = [&](int channel, int pitch, std::uint64_t off_tick,
                        Cursor& at) {
    auto it = open.find({channel, pitch});
    if (it == open.end() || it->second.empty()) {
      at.fail("unmatched note-off (channel " + std::to_string(channel + 1) +
              ", pitch " + std::to_string(pitch) + ")");
    }
    RawNote note = it->second.back();
    it->second.pop_back();
    note.off_tick = off_tick;
    if (note.off_tick > note.on_tick) notes.push_back(note);
    // Zero-length strikes are dropped (no audible note).
  };

  while (cur.pos < end) {
    tick += cur.vlq();
    std::uint8_t status = cur.u8();
    if (status < 0x80) {
      if (running_status == 0) cur.fail("data byte without running status");
      --cur.pos;
      status = running_status;
    }
    if (status < 0xF0) running_status = status;

    const int type = status >> 4;
    const int channel = status & 0x0F;
    switch (type) {
      case 0x8: {  // note off
        int pitch = cur.u8() & 0x7F;
        cur.u8();  // release velocity
        close_note(channel, pitch, tick, cur);
        break;
      }
      case 0x9: {  // note on (velocity 0 = off)
        int pitch = cur.u8() & 0x7F;
        int velocity = cur.u8() & 0x7F;
        if (velocity == 0) {
          close_note(channel, pitch, tick, cur);
        } else {
          open[{channel, pitch}].push_back(RawNote{tick, 0, pitch, velocity});
        }
        break;
      }
      case 0xA:  // poly aftertouch
      case 0xB:  // controller
      case 0xE:  // pitch bend
        cur.skip(2);
        break;
      case 0xC:  // program change
      case 0xD:  // channel aftertouch
        cur.skip(1);
        break;
      case 0xF: {
        running_status = 0;  // sysex/meta cancel running status
        if (status == 0xFF) {  // meta
          std::uint8_t meta = cur.u8();
          std::uint32_t len = cur.vlq();
          if (meta == 0x51) {
            if (len != 3) cur.fail("tempo meta event with length != 3");
            std::uint32_t tempo = cur.be(3);
            tempos.push_back(TempoEvent{tick, tempo});
          } else if (meta == 0x2F) {
            cur.skip(len);
            cur.pos = end;  // end of track
          } else {
            cur.skip(len);
          }
        } else if (status == 0xF0 || status == 0xF7) {  // sysex
          cur.skip(cur.vlq());
        } else {
          cur.fail("unsupported system message 0x" + std::to_string(status));
        }
        break;
      }
      default:
        cur.fail("unsupported status byte");
    }
  }
  if (cur.pos != end) cur.fail("event ran past track chunk boundary");

  // Close anything still sounding at end of track.
  for (auto& [key, stack] : open) {
    for (RawNote note : stack) {
      note.off_tick = tick;
      if (note.off_tick > note.on_tick) notes.push_back(note);
    }
  }
}

}  // namespace

std::vector<NoteEvent> parse_smf(std::span<const std::uint8_t> bytes) {
  Cursor cur{bytes};
  if (bytes.size() < 14 || bytes[0] != 'M' || bytes[1] != 'T' ||
      bytes[2] != 'h' || bytes[3] != 'd') {
    cur.fail("missing MThd header");
  }
  cur.pos = 4;
  std::uint32_t header_len = cur.be(4);
  if (header_len < 6) cur.fail("header chunk too short");
  std::uint32_t format = cur.be(2);
  std::uint32_t n_tracks = cur.be(2);
  std::uint32_t division = cur.be(2);
  if (format > 1) cur.fail("unsupported SMF format " + std::to_string(format));
  if (division & 0x8000) cur.fail("SMPTE division not supported");
  if (division == 0) cur.fail("division must be positive");
  cur.skip(header_len - 6);

  std::vector<RawNote> raw;
  std::vector<TempoEvent> tempos;
  for (std::uint32_t t = 0; t < n_tracks; ++t) {
    if (cur.pos + 8 > bytes.size()) cur.fail("missing track chunk");
    std::uint32_t tag = cur.be(4);
    std::uint32_t len = cur.be(4);
    if (tag != 0x4D54726B) {  // "MTrk": skip alien chunks, per SMF spec
      cur.skip(len);
      --t;
      continue;
    }
    if (cur.pos + len > bytes.size()) cur.fail("truncated track chunk");
    parse_track(cur, len, raw, tempos);
  }

  TempoMap tempo_map(std::move(tempos), static_cast<int>(division));
  std::vector<NoteEvent> notes;
  notes.reserve(raw.size());
  for (const RawNote& r : raw) {
    NoteEvent n;
    n.pitch = r.pitch;
    n.velocity = r.velocity;
    n.onset = tempo_map.seconds_at(r.on_tick);
    n.offset = tempo_map.seconds_at(r.off_tick);
    notes.push_back(n);
  }
  sort_notes(notes);
  return notes;
}

std::vector<Segment> segment(const std::vector<NoteEvent>& notes,
                             double total_dur, double window, double hop) {
  if (window <= 0.0 || hop <= 0.0) {
    throw ValidationError("segment: window and hop must be > 0");
  }
  std::vector<double> starts;
  if (total_dur < window) {
    starts.push_back(0.0);  // one zero-padded segment
  } else {
    long long count =
        static_cast<long long>(std::floor((total_dur - window) / hop)) + 1;
    for (long long k = 0; k < count; ++k) {
      starts.push_back(static_cast<double>(k) * hop);
    }
  }

  std::vector<Segment> segments;
  segments.reserve(starts.size());
  for (double start : starts) {
    Segment seg;
    seg.start = start;
    seg.duration = window;
    for (const NoteEvent& n : notes) {
      if (n.onset >= start && n.onset < start + window) {
        NoteEvent re = n;
        re.onset = n.onset - start;
        re.offset = std::min(n.offset - start, window);
        seg.notes.push_back(re);
      }
    }
    segments.push_back(std::move(seg));
  }
  return segments;
}

std::vector<NoteEvent> pitch_shift_notes(const std::vector<NoteEvent>& notes,
                                         int semitones) {
  std::string offenders;
  for (std::size_t i = 0; i < notes.size(); ++i) {
    int p = notes[i].pitch + semitones;
    if (p < 0 || p > 127) {
      if (!offenders.empty()) offenders += ", ";
      offenders += "notes[" + std::to_string(i) + "] pitch " +
                   std::to_string(notes[i].pitch);
    }
  }
  if (!offenders.empty()) {
    throw ValidationError("pitch_shift: shift by " + std::to_string(semitones) +
                          " leaves 0..127 for " + offenders);
  }
  std::vector<NoteEvent> out = notes;
  for (NoteEvent& n : out) n.pitch += semitones;
  return out;
}

std::vector<NoteEvent> onset_jitter(const std::vector<NoteEvent>& notes,
                                    double max_shift, std::uint64_t seed) {
  if (max_shift < 0.0) {
    throw ValidationError("onset_jitter: max_shift must be >= 0");
  }
  Rng rng(seed);
  std::vector<NoteEvent> out = notes;
  for (NoteEvent& n : out) {
    double d_on = rng.uniform(-max_shift, max_shift);
    double d_off = rng.uniform(-max_shift, max_shift);
    n.onset = std::max(0.0, n.onset + d_on);
    n.offset = std::max(n.onset + 0.001, n.offset + d_off);
  }
  sort_notes(out);
  return out;
}

}  // namespace tart
