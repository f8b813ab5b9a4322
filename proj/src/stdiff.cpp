#include "ergolab/stdiff.hpp"

#include <algorithm>

namespace ergolab {

namespace {

long clamp_long(long v, long lo, long hi) { return std::max(lo, std::min(hi, v)); }

void require_window(const PointWindow& x, long a, long b) {
  if (!x.covers(a, b)) {
    throw InsufficientWindow("point window [" + std::to_string(x.lo) + "," +
                             std::to_string(x.hi) + ") does not cover [" +
                             std::to_string(a) + "," + std::to_string(b) + ")");
  }
}

// mu of the rank-k cylinder of x is positive iff every observed transition
// is allowed; Bernoulli marginals and stationary vectors are positive by
// construction.
void require_positive_cylinder(const MeasureModel& m, const PointWindow& x, long k) {
  const auto* mk = std::get_if<MarkovMeasure>(&m);
  if (!mk) return;
  for (long j = 0; j + 1 < k; ++j) {
    if (mk->transition(x.symbol_at(j), x.symbol_at(j + 1)) == 0) {
      throw ZeroMeasureCylinder("window hits a forbidden transition at index " +
                                std::to_string(j));
    }
  }
}

// P(symbols at [s, e) | x_0), for a constraint block strictly left of 0.
// Stationary chains are Markov in both directions, so conditioning on x_0
// screens off the rest of the window.
Rat left_overhang_factor(const MeasureModel& m, const Word& a, long s, long e,
                         int anchor) {
  if (const auto* b = std::get_if<BernoulliMeasure>(&m)) {
    Rat out(1);
    for (long j = s; j < e; ++j) out *= b->p(a.at(j - s));
    return out;
  }
  const auto& mk = std::get<MarkovMeasure>(m);
  Rat out = mk.stationary(a.at(0));
  for (long j = s; j + 1 < e; ++j) out *= mk.transition(a.at(j - s), a.at(j + 1 - s));
  out *= mk.transition_power(1 - e, a.at(e - 1 - s), anchor);  // bridge to x_0
  out /= mk.stationary(anchor);
  return out;
}

// P(symbols at [j0, e) | x_{k-1}), for a constraint block strictly right of
// the window; `base` is the offset of a's first symbol.
Rat right_overhang_factor(const MeasureModel& m, const Word& a, long base, long j0,
                          long e, long k, int anchor) {
  if (const auto* b = std::get_if<BernoulliMeasure>(&m)) {
    Rat out(1);
    for (long j = j0; j < e; ++j) out *= b->p(a.at(j - base));
    return out;
  }
  const auto& mk = std::get<MarkovMeasure>(m);
  Rat out = mk.transition_power(j0 - (k - 1), anchor, a.at(j0 - base));
  for (long j = j0; j + 1 < e; ++j) out *= mk.transition(a.at(j - base), a.at(j + 1 - base));
  return out;
}

// Core of conditional_average, assuming the window covers [0, k) and the
// rank-k cylinder has positive measure.
Rat conditional_average_unchecked(const MeasureModel& m, const PointWindow& x,
                                  long k, long i, const ShiftedCylinderIndicator& ind) {
  const long s = i + ind.offset;
  const long e = s + ind.word.length();
  for (long j = std::max(s, 0L); j < std::min(e, k); ++j) {
    if (x.symbol_at(j) != ind.word.at(j - s)) return Rat(0);
  }
  Rat out(1);
  if (s < 0) out *= left_overhang_factor(m, ind.word, s, std::min(e, 0L), x.symbol_at(0));
  if (e > k) {
    out *= right_overhang_factor(m, ind.word, s, std::max(s, k), e, k, x.symbol_at(k - 1));
  }
  return out;
}

struct IndexSplit {
  long ilo;  // first i whose constraint window starts at >= 0
  long ihi;  // one past the last i whose constraint window fits inside [0, k)
};

IndexSplit split_indices(long k, long offset, long len) {
  IndexSplit sp;
  sp.ilo = clamp_long(-offset, 0, k);
  sp.ihi = clamp_long(k - len - offset + 1, sp.ilo, k);
  return sp;
}

void validate_inputs(const MeasureModel& m, const PointWindow& x, long k,
                     const CylinderFunction& f) {
  if (k < 1) throw ValidationError("time scale k must be >= 1");
  const Alphabet alpha(alphabet_size(m));
  if (!x.valid_for(alpha)) throw ValidationError("window symbols outside the alphabet");
  if (!f.valid_for(alpha)) throw ValidationError("function words outside the alphabet");
  require_window(x, 0, k);
}

bool word_matches_at(const PointWindow& x, const Word& w, long q) {
  for (long j = 0; j < w.length(); ++j) {
    if (x.symbol_at(q + j) != w.at(j)) return false;
  }
  return true;
}

}  // namespace

Rat conditional_average(const MeasureModel& m, const PointWindow& x, long k,
                        long i, const ShiftedCylinderIndicator& ind) {
  if (k < 1) throw ValidationError("time scale k must be >= 1");
  if (i < 0 || i >= k) throw ValidationError("shift index i must lie in [0, k)");
  const Alphabet alpha(alphabet_size(m));
  if (!x.valid_for(alpha)) throw ValidationError("window symbols outside the alphabet");
  if (!ind.word.valid_for(alpha)) throw ValidationError("word outside the alphabet");
  require_window(x, 0, k);
  require_positive_cylinder(m, x, k);
  return conditional_average_unchecked(m, x, k, i, ind);
}

Rat stdiff_value(const MeasureModel& m, const PointWindow& x, long k,
                 const CylinderFunction& f) {
  validate_inputs(m, x, k, f);
  require_positive_cylinder(m, x, k);
  Rat acc(0);
  for (const auto& t : f.terms()) {
    const long len = t.indicator.word.length();
    const long n = t.indicator.offset;
    const auto sp = split_indices(k, n, len);
    long matches = 0;
    for (long i = sp.ilo; i < sp.ihi; ++i) {
      if (word_matches_at(x, t.indicator.word, i + n)) ++matches;
    }
    if (matches != 0) acc += t.coeff * matches;
    Rat boundary(0);
    for (long i = 0; i < sp.ilo; ++i) {
      boundary += conditional_average_unchecked(m, x, k, i, t.indicator);
    }
    for (long i = sp.ihi; i < k; ++i) {
      boundary += conditional_average_unchecked(m, x, k, i, t.indicator);
    }
    acc += t.coeff * boundary;
  }
  return acc / k;
}

DiffSeries stdiff_series(const MeasureModel& m, const PointWindow& x,
                         const std::vector<long>& ks, const CylinderFunction& f) {
  if (ks.empty()) throw ValidationError("empty k schedule");
  for (size_t j = 0; j < ks.size(); ++j) {
    if (ks[j] < 1 || (j > 0 && ks[j] <= ks[j - 1])) {
      throw ValidationError("k schedule must be strictly increasing and >= 1");
    }
  }
  const long kmax = ks.back();
  validate_inputs(m, x, kmax, f);
  require_positive_cylinder(m, x, kmax);

  // occ[t][q] = number of occurrences of term t's word starting before q.
  std::vector<std::vector<long>> occ;
  occ.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    const long len = t.indicator.word.length();
    std::vector<long> pref(static_cast<size_t>(kmax) + 1, 0);
    for (long q = 0; q < kmax; ++q) {
      bool hit = q + len <= kmax && word_matches_at(x, t.indicator.word, q);
      pref[static_cast<size_t>(q) + 1] = pref[static_cast<size_t>(q)] + (hit ? 1 : 0);
    }
    occ.push_back(std::move(pref));
  }

  DiffSeries out;
  out.entries.reserve(ks.size());
  for (long k : ks) {
    Rat acc(0);
    for (size_t t = 0; t < f.terms().size(); ++t) {
      const auto& term = f.terms()[t];
      const long len = term.indicator.word.length();
      const long n = term.indicator.offset;
      const auto sp = split_indices(k, n, len);
      if (sp.ihi > sp.ilo) {
        long matches = occ[t][static_cast<size_t>(sp.ihi + n)] -
                       occ[t][static_cast<size_t>(sp.ilo + n)];
        if (matches != 0) acc += term.coeff * matches;
      }
      Rat boundary(0);
      for (long i = 0; i < sp.ilo; ++i) {
        boundary += conditional_average_unchecked(m, x, k, i, term.indicator);
      }
      for (long i = sp.ihi; i < k; ++i) {
        boundary += conditional_average_unchecked(m, x, k, i, term.indicator);
      }
      acc += term.coeff * boundary;
    }
    Rat v = acc / k;
    out.entries.push_back({k, v, rat_double(v)});
  }
  return out;
}

Rat frequency(const PointWindow& x, const Word& a, long k, FrequencyCap cap) {
  if (k < 1) throw ValidationError("time scale k must be >= 1");
  const long len = a.length();
  const long last = cap == FrequencyCap::ToKMinusL ? k - len : k - 1;
  if (last >= 0) require_window(x, 0, last + len);
  long count = 0;
  for (long i = 0; i <= last; ++i) {
    if (word_matches_at(x, a, i)) ++count;
  }
  return Rat(count) / k;
}

NormalityReport normality_report(const MeasureModel& m, const PointWindow& x,
                                 int max_len, long k) {
  if (max_len < 1) throw ValidationError("max word length must be >= 1");
  if (k < 1) throw ValidationError("time scale k must be >= 1");
  require_window(x, 0, k + max_len - 1);
  const int d = alphabet_size(m);
  if (!x.valid_for(Alphabet(d))) throw ValidationError("window symbols outside the alphabet");

  NormalityReport rep;
  rep.k = k;
  rep.max_len = max_len;
  rep.max_deviation = 0;
  std::vector<int> digits;
  for (int len = 1; len <= max_len; ++len) {
    digits.assign(static_cast<size_t>(len), 0);
    while (true) {
      Word w(digits);
      NormalityRow row;
      row.word = w;
      row.freq = frequency(x, w, k, FrequencyCap::ToKMinusL);
      row.mu = word_measure(m, w);
      row.deviation = rat_abs(row.freq - row.mu);
      if (row.deviation > rep.max_deviation) rep.max_deviation = row.deviation;
      rep.rows.push_back(std::move(row));
      int pos = len - 1;
      while (pos >= 0 && digits[static_cast<size_t>(pos)] == d - 1) {
        digits[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++digits[static_cast<size_t>(pos)];
    }
  }
  return rep;
}

}  // namespace ergolab
