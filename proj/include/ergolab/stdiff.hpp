#pragma once

#include <optional>
#include <vector>

#include "ergolab/measure.hpp"

namespace ergolab {

// One evaluation of a spatial-temporal average: at time scale k the Birkhoff
// sum of a cylinder function is averaged over the rank-k cylinder of the
// observed point. Exact value plus a float mirror for plotting; series from
// metric systems carry only the float.
struct DiffSeriesEntry {
  long k = 0;
  std::optional<Rat> value;
  double value_float = 0.0;
};

struct DiffSeries {
  std::vector<DiffSeriesEntry> entries;
};

// Exact conditional expectation, over the cylinder fixed by x on [0, k), of
// the indicator `ind` composed with shift^i. Interior constraints reduce to
// a symbol match; parts hanging out of [0, k) integrate out through the
// measure (for Markov, conditionally on the window endpoints).
// Throws ZeroMeasureCylinder when mu of the rank-k cylinder vanishes.
Rat conditional_average(const MeasureModel& m, const PointWindow& x, long k,
                        long i, const ShiftedCylinderIndicator& ind);

// alpha over the rank-k cylinder of x of the k-step Birkhoff average of f.
Rat stdiff_value(const MeasureModel& m, const PointWindow& x, long k,
                 const CylinderFunction& f);

// stdiff_value along an ascending k schedule. Shares one occurrence-prefix
// pass over x per term, so the whole series costs O(max k) symbol work plus
// O(window) exact boundary terms per k.
DiffSeries stdiff_series(const MeasureModel& m, const PointWindow& x,
                         const std::vector<long>& ks, const CylinderFunction& f);

// Which Birkhoff index range an empirical word frequency counts over.
// ToKMinusL counts full occurrences inside [0, k); ToKMinusOne counts all k
// shifts and therefore needs data through index k + len - 2.
enum class FrequencyCap { ToKMinusL, ToKMinusOne };

Rat frequency(const PointWindow& x, const Word& a, long k, FrequencyCap cap);

struct NormalityRow {
  Word word;
  Rat freq;
  Rat mu;
  Rat deviation;  // |freq - mu|
};

struct NormalityReport {
  long k = 0;
  int max_len = 0;
  std::vector<NormalityRow> rows;  // all words of length 1..max_len, lex order
  Rat max_deviation;
};

// Empirical frequencies of every word of length <= max_len against their
// measures. Needs x to cover [0, k + max_len - 1).
NormalityReport normality_report(const MeasureModel& m, const PointWindow& x,
                                 int max_len, long k);

}  // namespace ergolab
