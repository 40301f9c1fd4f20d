#include "tart/score_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "tart/errors.hpp"

namespace tart {

namespace {

constexpr std::array<std::string_view, kNumTechniques> kTechniqueNames = {
    "picking",  "sweep_picking", "alternate_picking", "legato", "slide",
    "bend",     "vibrato",       "palm_mute",         "harmonic", "other"};

using json = nlohmann::json;

}  // namespace

std::string_view to_string(TechniqueLabel label) {
  return kTechniqueNames[static_cast<std::size_t>(label)];
}

std::optional<TechniqueLabel> technique_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kTechniqueNames.size(); ++i) {
    if (kTechniqueNames[i] == name) return static_cast<TechniqueLabel>(i);
  }
  return std::nullopt;
}

void validate_config(const InstrumentConfig& config) {
  if (config.open_pitches.empty()) {
    throw ValidationError("instrument: open_pitches must not be empty");
  }
  for (int p : config.open_pitches) {
    if (p < 0 || p > 127) {
      throw ValidationError("instrument: open pitch " + std::to_string(p) +
                            " outside 0..127");
    }
  }
  if (config.max_fret < 1) {
    throw ValidationError("instrument: max_fret must be >= 1");
  }
  if (config.capo < 0 || config.capo > 7) {
    throw ValidationError("instrument: capo must be in 0..7");
  }
}

PianoRoll make_piano_roll(int num_frames, double frame_hop) {
  if (num_frames < 0 || frame_hop <= 0.0) {
    throw ValidationError("piano roll: need num_frames >= 0 and frame_hop > 0");
  }
  PianoRoll roll;
  roll.num_frames = num_frames;
  roll.frame_hop = frame_hop;
  roll.values.assign(static_cast<std::size_t>(roll.num_pitches) * num_frames,
                     0.0);
  return roll;
}

int pitch_of(const FretPosition& position, const InstrumentConfig& config) {
  if (position.string < 1 || position.string > config.num_strings()) {
    throw ValidationError("position: string " + std::to_string(position.string) +
                          " outside 1.." + std::to_string(config.num_strings()));
  }
  if (position.fret < 0 || position.fret > config.max_fret) {
    throw ValidationError("position: fret " + std::to_string(position.fret) +
                          " outside 0.." + std::to_string(config.max_fret));
  }
  return config.open_pitches[static_cast<std::size_t>(position.string - 1)] +
         config.capo + position.fret;
}

std::vector<FretPosition> candidates_for(int pitch,
                                         const InstrumentConfig& config) {
  std::vector<FretPosition> out;
  for (int s = 1; s <= config.num_strings(); ++s) {
    int fret = pitch - config.open_pitches[static_cast<std::size_t>(s - 1)] -
               config.capo;
    if (fret >= 0 && fret <= config.max_fret) {
      out.push_back(FretPosition{s, fret});
    }
  }
  return out;
}

namespace {

bool note_order(const NoteEvent& a, const NoteEvent& b) {
  if (a.onset != b.onset) return a.onset < b.onset;
  return a.pitch < b.pitch;
}

}  // namespace

void sort_notes(std::vector<AnnotatedNote>& notes) {
  std::stable_sort(notes.begin(), notes.end(),
                   [](const AnnotatedNote& a, const AnnotatedNote& b) {
                     return note_order(a.note, b.note);
                   });
}

void sort_notes(std::vector<NoteEvent>& notes) {
  std::stable_sort(notes.begin(), notes.end(), note_order);
}

void validate_track(const TrackAnnotation& track) {
  validate_config(track.config);
  for (std::size_t i = 0; i < track.notes.size(); ++i) {
    const AnnotatedNote& an = track.notes[i];
    const std::string where = "notes[" + std::to_string(i) + "]";
    if (an.note.pitch < 0 || an.note.pitch > 127) {
      throw ValidationError(where + ": pitch outside 0..127");
    }
    if (an.note.onset < 0.0) {
      throw ValidationError(where + ": onset must be >= 0");
    }
    if (!(an.note.offset > an.note.onset)) {
      throw ValidationError(where + ": offset must exceed onset");
    }
    if (an.note.velocity < 1 || an.note.velocity > 127) {
      throw ValidationError(where + ": velocity outside 1..127");
    }
    if (an.confidence &&
        (*an.confidence < 0.0 || *an.confidence > 1.0)) {
      throw ValidationError(where + ": confidence outside [0,1]");
    }
    if (an.position) {
      int sounded = pitch_of(*an.position, track.config);
      if (!an.unrepaired && sounded != an.note.pitch) {
        throw ValidationError(where + ": position sounds pitch " +
                              std::to_string(sounded) + ", note has " +
                              std::to_string(an.note.pitch));
      }
    }
    if (i > 0 && note_order(an.note, track.notes[i - 1].note)) {
      throw ValidationError(where + ": notes not sorted by (onset, pitch)");
    }
  }
}

// ---------------------------------------------------------------------------
// JAMS subset I/O
// ---------------------------------------------------------------------------

namespace {

// Fixed 6-decimal float format (glibc printf rounds to nearest even).
std::string fixed6(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0.0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// --- read-side helpers: every accessor carries the JSON path for errors ---

const json& expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected object");
  return j;
}

const json& expect_field(const json& j, const char* key,
                         const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "." + key + ": missing field");
  return *it;
}

int expect_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected integer");
  return j.get<int>();
}

double expect_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected number");
  return j.get<double>();
}

std::string expect_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected string");
  return j.get<std::string>();
}

int expect_int_range(const json& j, int lo, int hi, const std::string& path) {
  int v = expect_int(j, path);
  if (v < lo || v > hi) {
    throw ParseError(path + ": value " + std::to_string(v) + " outside " +
                     std::to_string(lo) + ".." + std::to_string(hi));
  }
  return v;
}

AnnotatedNote parse_note(const json& item, const InstrumentConfig& config,
                         const std::string& path) {
  expect_object(item, path);
  AnnotatedNote an;
  an.note.onset = expect_number(expect_field(item, "time", path), path + ".time");
  if (an.note.onset < 0.0) throw ParseError(path + ".time: must be >= 0");
  double dur =
      expect_number(expect_field(item, "duration", path), path + ".duration");
  if (dur <= 0.0) throw ParseError(path + ".duration: must be > 0");
  an.note.offset = an.note.onset + dur;

  const json& value = expect_object(expect_field(item, "value", path),
                                    path + ".value");
  const std::string vpath = path + ".value";
  an.note.pitch =
      expect_int_range(expect_field(value, "pitch", vpath), 0, 127, vpath + ".pitch");
  an.note.velocity = expect_int_range(expect_field(value, "velocity", vpath), 1,
                                      127, vpath + ".velocity");

  const json& string_j = expect_field(value, "string", vpath);
  const json& fret_j = expect_field(value, "fret", vpath);
  if (string_j.is_null() != fret_j.is_null()) {
    throw ParseError(vpath + ".fret: string and fret must be both set or both null");
  }
  if (!string_j.is_null()) {
    FretPosition pos;
    pos.string = expect_int_range(string_j, 1, config.num_strings(), vpath + ".string");
    pos.fret = expect_int_range(fret_j, 0, config.max_fret, vpath + ".fret");
    int sounded = pitch_of(pos, config);
    if (sounded != an.note.pitch) {
      throw ParseError(vpath + ".fret: position sounds pitch " +
                       std::to_string(sounded) + ", note has " +
                       std::to_string(an.note.pitch));
    }
    an.position = pos;
  }

  const json& tech = expect_field(value, "technique", vpath);
  if (!tech.is_null()) {
    std::string name = expect_string(tech, vpath + ".technique");
    auto label = technique_from_string(name);
    if (!label) {
      throw ParseError(vpath + ".technique: unknown technique '" + name + "'");
    }
    an.technique = label;
  }

  if (auto it = item.find("confidence"); it != item.end() && !it->is_null()) {
    double c = expect_number(*it, path + ".confidence");
    if (c < 0.0 || c > 1.0) {
      throw ParseError(path + ".confidence: outside [0,1]");
    }
    an.confidence = c;
  }
  return an;
}

}  // namespace

TrackAnnotation read_jams(const std::string& bytes) {
  json root = json::parse(bytes, nullptr, false);
  if (root.is_discarded()) throw ParseError("$: malformed JSON");
  expect_object(root, "$");

  TrackAnnotation track;
  const json& meta = expect_object(expect_field(root, "file_metadata", "$"),
                                   "$.file_metadata");
  track.title = expect_string(expect_field(meta, "title", "$.file_metadata"),
                              "$.file_metadata.title");
  track.duration = expect_number(
      expect_field(meta, "duration", "$.file_metadata"), "$.file_metadata.duration");
  if (track.duration < 0.0) {
    throw ParseError("$.file_metadata.duration: must be >= 0");
  }

  const json& anns = expect_field(root, "annotations", "$");
  if (!anns.is_array()) throw ParseError("$.annotations: expected array");
  if (anns.size() > 1) {
    throw ParseError("$.annotations: at most one note_tab annotation in v1");
  }
  if (anns.empty()) {
    track.has_annotation = false;
    return track;
  }

  const std::string apath = "$.annotations[0]";
  const json& ann = expect_object(anns[0], apath);
  std::string ns = expect_string(expect_field(ann, "namespace", apath),
                                 apath + ".namespace");
  if (ns != "note_tab") {
    throw ParseError(apath + ".namespace: unknown namespace '" + ns + "'");
  }

  const json& inst = expect_object(expect_field(ann, "instrument", apath),
                                   apath + ".instrument");
  const std::string ipath = apath + ".instrument";
  const json& pitches = expect_field(inst, "open_pitches", ipath);
  if (!pitches.is_array()) {
    throw ParseError(ipath + ".open_pitches: expected array");
  }
  track.config.open_pitches.clear();
  for (std::size_t i = 0; i < pitches.size(); ++i) {
    track.config.open_pitches.push_back(expect_int_range(
        pitches[i], 0, 127,
        ipath + ".open_pitches[" + std::to_string(i) + "]"));
  }
  track.config.max_fret =
      expect_int(expect_field(inst, "max_fret", ipath), ipath + ".max_fret");
  track.config.capo =
      expect_int(expect_field(inst, "capo", ipath), ipath + ".capo");
  try {
    validate_config(track.config);
  } catch (const ValidationError& e) {
    throw ParseError(ipath + ": " + e.what());
  }

  const json& data = expect_field(ann, "data", apath);
  if (!data.is_array()) throw ParseError(apath + ".data: expected array");
  for (std::size_t i = 0; i < data.size(); ++i) {
    track.notes.push_back(parse_note(
        data[i], track.config, apath + ".data[" + std::to_string(i) + "]"));
  }
  sort_notes(track.notes);
  return track;
}

std::string write_jams(const TrackAnnotation& track) {
  validate_track(track);
  std::string out;
  out.reserve(256 + track.notes.size() * 256);
  out += "{\n";
  out += "  \"file_metadata\": {\n";
  out += "    \"title\": \"" + json_escape(track.title) + "\",\n";
  out += "    \"duration\": " + fixed6(track.duration) + "\n";
  out += "  },\n";
  if (!track.has_annotation && track.notes.empty()) {
    out += "  \"annotations\": []\n";
    out += "}\n";
    return out;
  }
  out += "  \"annotations\": [\n";
  out += "    {\n";
  out += "      \"namespace\": \"note_tab\",\n";
  out += "      \"instrument\": {\n";
  out += "        \"open_pitches\": [";
  for (std::size_t i = 0; i < track.config.open_pitches.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(track.config.open_pitches[i]);
  }
  out += "],\n";
  out += "        \"max_fret\": " + std::to_string(track.config.max_fret) + ",\n";
  out += "        \"capo\": " + std::to_string(track.config.capo) + "\n";
  out += "      },\n";
  out += "      \"data\": [";
  for (std::size_t i = 0; i < track.notes.size(); ++i) {
    const AnnotatedNote& an = track.notes[i];
    out += i ? ",\n" : "\n";
    out += "        {\n";
    out += "          \"time\": " + fixed6(an.note.onset) + ",\n";
    out += "          \"duration\": " + fixed6(an.note.offset - an.note.onset) + ",\n";
    out += "          \"value\": {\n";
    out += "            \"pitch\": " + std::to_string(an.note.pitch) + ",\n";
    out += "            \"velocity\": " + std::to_string(an.note.velocity) + ",\n";
    // Unrepaired notes serialize with no position; the v1 schema has no
    // flag field and pitch consistency is enforced on read.
    if (an.position && !an.unrepaired) {
      out += "            \"string\": " + std::to_string(an.position->string) + ",\n";
      out += "            \"fret\": " + std::to_string(an.position->fret) + ",\n";
    } else {
      out += "            \"string\": null,\n";
      out += "            \"fret\": null,\n";
    }
    if (an.technique) {
      out += "            \"technique\": \"" + std::string(to_string(*an.technique)) + "\"\n";
    } else {
      out += "            \"technique\": null\n";
    }
    out += "          },\n";
    if (an.confidence) {
      out += "          \"confidence\": " + fixed6(*an.confidence) + "\n";
    } else {
      out += "          \"confidence\": null\n";
    }
    out += "        }";
  }
  out += track.notes.empty() ? "]\n" : "\n      ]\n";
  out += "    }\n";
  out += "  ]\n";
  out += "}\n";
  return out;
}

}  // namespace tart
