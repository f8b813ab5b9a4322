#pragma once

#include <vector>

#include "ergolab/measure.hpp"

namespace ergolab {

// Memory-1 subshift of finite type on {0..d-1}: allowed(a, b) says the
// two-letter block ab may occur. Construction trims the symbol graph to its
// essential part (every kept symbol has a kept successor and predecessor),
// because only windows of bi-infinite trajectories count as admissible.
// Throws EmptySft when nothing survives the trim.
class Sft {
 public:
  Sft(int d, std::vector<std::vector<bool>> allowed);
  static Sft full_shift(int d);

  int alphabet_size() const { return d_; }
  bool allowed(int a, int b) const {
    return allowed_[static_cast<size_t>(a)][static_cast<size_t>(b)];
  }
  bool essential(int s) const { return essential_[static_cast<size_t>(s)]; }
  const std::vector<int>& essential_symbols() const { return essential_list_; }

  bool word_admissible(const Word& w) const;

 private:
  int d_;
  std::vector<std::vector<bool>> allowed_;
  std::vector<bool> essential_;
  std::vector<int> essential_list_;
};

// De Bruijn-style recoding of (subshift, window-w function) to memory 1:
// nodes are the admissible words of length w in lex order, edges follow
// one-step overlap, and each edge carries the exact value of the function
// on its source window.
struct WeightedTransitionGraph {
  struct Edge {
    int src;
    int dst;
    Rat weight;
  };

  int window = 1;
  std::vector<Word> nodes;   // lex sorted
  std::vector<Edge> edges;   // sorted by (src, dst)

  std::vector<std::vector<int>> successors() const;   // by node index
  std::vector<std::vector<int>> predecessors() const;
  const Rat& node_value(int v) const { return values_[static_cast<size_t>(v)]; }
  const std::vector<Rat>& node_values() const { return values_; }

  std::vector<Rat> values_;  // f(node window); edge weight = values_[src]
};

// Builds the recoded graph for f on s. The window is the constraint span of
// f (offsets normalized to start at 0); constant-free f with no terms is
// rejected. Dropping the shift does not change any Birkhoff average bound.
WeightedTransitionGraph build_transition_graph(const Sft& s, const CylinderFunction& f);

struct GaugeEntry {
  long k;
  Rat value;
};

struct GaugeSeries {
  std::vector<GaugeEntry> entries;
};

// Finite-horizon gauge: max over admissible words u of length k + w - 1 of
// the window average (1/k) sum_{i<k} f(shift^i u). Computed by max-plus
// dynamic programming on the recoded graph. Requires f >= 0 on every
// admissible window (shift f by a constant otherwise).
Rat finite_gauge(const Sft& s, const CylinderFunction& f, long k);

// finite_gauge along an ascending schedule, sharing one graph build.
GaugeSeries gauge_series(const Sft& s, const CylinderFunction& f,
                         const std::vector<long>& ks);

struct MaxMeanCycle {
  Rat value;
  std::vector<int> cycle;  // node indices, consecutive edges exist, closes up
};

// Exact maximum cycle mean of the edge-weighted graph, by Karp's recurrence
// per strongly connected component. The witness is the shortest optimal
// cycle; among those, the one through the smallest node index following
// smallest-index successors.
MaxMeanCycle max_mean_cycle(const WeightedTransitionGraph& g);

struct GapReport {
  Rat gamma_kmax;     // finite-horizon gauge at the largest checked horizon
  Rat mmc_value;      // exact limit of the finite gauges
  Rat mu_integral;    // integral of f under the reference measure
  Rat gap;            // mmc_value - mu_integral
  bool certified_not_uniquely_ergodic = false;  // gap > 0
  MaxMeanCycle witness;
};

// Compares the sup-norm gauge of f against its integral under a strictly
// positive shift-invariant measure supported on s. A strictly positive gap
// certifies that s carries more than one invariant measure.
GapReport gauge_gap(const MeasureModel& m, const Sft& s,
                    const CylinderFunction& f, long k_max);

}  // namespace ergolab
