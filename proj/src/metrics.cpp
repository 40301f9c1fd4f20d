#include "tart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "tart/errors.hpp"

namespace tart {

namespace {

struct Edge {
  int left;
  int right;
  double cost;
};

// Min-cost maximum-cardinality bipartite matching, solved as unit-capacity
// min-cost flow by successive shortest augmenting paths (Bellman-Ford on the
// residual graph). Edge costs are non-negative, so after k augmentations the
// flow is cost-minimal among all k-edge matchings; augmenting until no path
// remains yields the min-cost maximum matching.
class MinCostMatcher {
 public:
  MinCostMatcher(int n_left, int n_right)
      : n_left_(n_left),
        n_right_(n_right),
        source_(n_left + n_right),
        sink_(n_left + n_right + 1),
        adj_(static_cast<std::size_t>(n_left + n_right + 2)) {
    for (int i = 0; i < n_left_; ++i) add_arc(source_, i, 0.0);
    for (int j = 0; j < n_right_; ++j) add_arc(n_left_ + j, sink_, 0.0);
  }

  void add_edge(int left, int right, double cost) {
    add_arc(left, n_left_ + right, cost);
  }

  /// Runs the flow; returns match_left (right index or -1 per left node).
  std::vector<int> solve() {
    while (augment()) {
    }
    std::vector<int> match_left(static_cast<std::size_t>(n_left_), -1);
    for (int i = 0; i < n_left_; ++i) {
      for (int e : adj_[static_cast<std::size_t>(i)]) {
        const Arc& a = arcs_[static_cast<std::size_t>(e)];
        if (a.to >= n_left_ && a.to < n_left_ + n_right_ && a.cap == 0) {
          match_left[static_cast<std::size_t>(i)] = a.to - n_left_;
        }
      }
    }
    return match_left;
  }

 private:
  struct Arc {
    int to;
    int cap;       // residual capacity, 0 or 1
    double cost;
  };

  void add_arc(int from, int to, double cost) {
    adj_[static_cast<std::size_t>(from)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back(Arc{to, 1, cost});
    adj_[static_cast<std::size_t>(to)].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back(Arc{from, 0, -cost});
  }

  bool augment() {
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = adj_.size();
    std::vector<double> dist(n, inf);
    std::vector<int> pred_arc(n, -1);
    dist[static_cast<std::size_t>(source_)] = 0.0;
    // Bellman-Ford: |V|-1 rounds with early exit.
    for (std::size_t round = 0; round + 1 < n; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (dist[u] == inf) continue;
        for (int e : adj_[u]) {
          const Arc& a = arcs_[static_cast<std::size_t>(e)];
          if (a.cap > 0 && dist[u] + a.cost < dist[static_cast<std::size_t>(a.to)] - 1e-15) {
            dist[static_cast<std::size_t>(a.to)] = dist[u] + a.cost;
            pred_arc[static_cast<std::size_t>(a.to)] = e;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[static_cast<std::size_t>(sink_)] == inf) return false;
    for (int v = sink_; v != source_;) {
      int e = pred_arc[static_cast<std::size_t>(v)];
      arcs_[static_cast<std::size_t>(e)].cap -= 1;
      arcs_[static_cast<std::size_t>(e ^ 1)].cap += 1;
      v = arcs_[static_cast<std::size_t>(e ^ 1)].to;
    }
    return true;
  }

  int n_left_;
  int n_right_;
  int source_;
  int sink_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

std::vector<int> min_cost_max_matching(int n_left, int n_right,
                                       const std::vector<Edge>& edges) {
  MinCostMatcher matcher(n_left, n_right);
  for (const Edge& e : edges) matcher.add_edge(e.left, e.right, e.cost);
  return matcher.solve();
}

}  // namespace

MatchResult match_notes(const std::vector<NoteEvent>& ref,
                        const std::vector<NoteEvent>& est, double tol) {
  if (tol < 0.0) throw ValidationError("match_notes: tol must be >= 0");

  // Edges only join equal pitches, so the problem splits per pitch value.
  std::map<int, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
      by_pitch;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    by_pitch[ref[i].pitch].first.push_back(i);
  }
  for (std::size_t j = 0; j < est.size(); ++j) {
    by_pitch[est[j].pitch].second.push_back(j);
  }

  MatchResult result;
  std::vector<bool> ref_matched(ref.size(), false);
  std::vector<bool> est_matched(est.size(), false);

  for (const auto& [pitch, sides] : by_pitch) {
    const auto& [ref_idx, est_idx] = sides;
    if (ref_idx.empty() || est_idx.empty()) continue;
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < ref_idx.size(); ++a) {
      for (std::size_t b = 0; b < est_idx.size(); ++b) {
        double d = std::abs(ref[ref_idx[a]].onset - est[est_idx[b]].onset);
        if (d <= tol) {
          edges.push_back(Edge{static_cast<int>(a), static_cast<int>(b), d});
        }
      }
    }
    std::vector<int> match = min_cost_max_matching(
        static_cast<int>(ref_idx.size()), static_cast<int>(est_idx.size()),
        edges);
    for (std::size_t a = 0; a < ref_idx.size(); ++a) {
      if (match[a] != -1) {
        result.pairs.emplace_back(ref_idx[a],
                                  est_idx[static_cast<std::size_t>(match[a])]);
        ref_matched[ref_idx[a]] = true;
        est_matched[est_idx[static_cast<std::size_t>(match[a])]] = true;
      }
    }
  }

  std::sort(result.pairs.begin(), result.pairs.end());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!ref_matched[i]) result.unmatched_ref.push_back(i);
  }
  for (std::size_t j = 0; j < est.size(); ++j) {
    if (!est_matched[j]) result.unmatched_est.push_back(j);
  }
  return result;
}

Prf prf50(const std::vector<NoteEvent>& ref, const std::vector<NoteEvent>& est,
          double tol) {
  if (ref.empty() && est.empty()) return Prf{1.0, 1.0, 1.0};
  MatchResult match = match_notes(ref, est, tol);
  double n_match = static_cast<double>(match.pairs.size());
  Prf out;
  out.precision = est.empty() ? 0.0 : n_match / static_cast<double>(est.size());
  out.recall = ref.empty() ? 0.0 : n_match / static_cast<double>(ref.size());
  out.f1 = (out.precision + out.recall) > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

std::pair<double, double> timing_mae(const MatchResult& match,
                                     const std::vector<NoteEvent>& ref,
                                     const std::vector<NoteEvent>& est) {
  if (match.pairs.empty()) {
    throw ValidationError("timing_mae: no matched pairs");
  }
  double onset_sum = 0.0;
  double offset_sum = 0.0;
  for (const auto& [r, e] : match.pairs) {
    onset_sum += std::abs(ref[r].onset - est[e].onset);
    offset_sum += std::abs(ref[r].offset - est[e].offset);
  }
  double n = static_cast<double>(match.pairs.size());
  return {onset_sum / n, offset_sum / n};
}

double velocity_mae(const MatchResult& match, const std::vector<NoteEvent>& ref,
                    const std::vector<NoteEvent>& est) {
  if (match.pairs.empty()) {
    throw ValidationError("velocity_mae: no matched pairs");
  }
  double sum = 0.0;
  for (const auto& [r, e] : match.pairs) {
    sum += std::abs(static_cast<double>(ref[r].velocity) -
                    static_cast<double>(est[e].velocity));
  }
  return sum / static_cast<double>(match.pairs.size());
}

double frame_average_precision(const PianoRoll& ref, const PianoRoll& est) {
  if (ref.num_pitches != est.num_pitches || ref.num_frames != est.num_frames ||
      ref.frame_hop != est.frame_hop) {
    throw ValidationError("frame_ap: roll shapes or hops differ");
  }
  const std::size_t n = ref.values.size();
  std::size_t n_pos = 0;
  for (double v : ref.values) {
    if (v != 0.0 && v != 1.0) {
      throw ValidationError("frame_ap: reference roll must be binary");
    }
    if (v == 1.0) ++n_pos;
  }
  if (n_pos == 0) {
    throw ValidationError("frame_ap: reference has no positive cells");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return est.values[a] > est.values[b];
                   });

  double ap = 0.0;
  std::size_t true_pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (ref.values[order[k]] == 1.0) {
      ++true_pos;
      double precision_at_k =
          static_cast<double>(true_pos) / static_cast<double>(k + 1);
      ap += precision_at_k / static_cast<double>(n_pos);
    }
  }
  return ap;
}

double pitch_accuracy(const std::vector<NoteEvent>& notes,
                      const std::vector<std::optional<FretPosition>>& positions,
                      const InstrumentConfig& config) {
  if (notes.size() != positions.size()) {
    throw ValidationError("pitch_accuracy: length mismatch");
  }
  if (notes.empty()) return 1.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (!positions[i]) continue;
    const FretPosition& p = *positions[i];
    if (p.string < 1 || p.string > config.num_strings() || p.fret < 0 ||
        p.fret > config.max_fret) {
      continue;
    }
    if (pitch_of(p, config) == notes[i].pitch) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(notes.size());
}

double tab_accuracy(const std::vector<std::optional<FretPosition>>& positions,
                    const std::vector<std::optional<FretPosition>>& reference) {
  if (positions.size() != reference.size()) {
    throw ValidationError("tab_accuracy: length mismatch");
  }
  if (positions.empty()) return 1.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] && reference[i] && *positions[i] == *reference[i]) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(positions.size());
}

}  // namespace tart
