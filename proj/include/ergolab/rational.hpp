#pragma once

#include <gmpxx.h>

#include <string>

#include "ergolab/errors.hpp"

namespace ergolab {

// All exact arithmetic in the library runs on GMP rationals. Arithmetic
// preserves canonical form (lowest terms, positive denominator), but the
// two-argument mpq_class constructor and mpq_set_str store their input
// verbatim, and equality assumes canonical operands. Everything entering the
// library must therefore pass through parse_rat, rat_frac or an explicit
// canonicalize().
using Rat = mpq_class;

// num/den reduced to canonical form.
inline Rat rat_frac(long num, long den) {
  if (den == 0) throw ValidationError("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "num" or "num/den" with optional leading '-'. Rejects den == 0.
// GMP's own parser is too lenient for config input (it skips whitespace),
// so the shape is checked by hand first.
inline Rat parse_rat(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const size_t num_start = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  bool ok = i > num_start;
  if (ok && i < s.size()) {
    ok = s[i] == '/';
    const size_t den_start = ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    ok = ok && i > den_start;
  }
  mpq_class q;
  if (!ok || i != s.size() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) {
    throw ValidationError("bad rational literal: '" + s + "'");
  }
  if (q.get_den() == 0) {
    throw ValidationError("zero denominator in rational literal: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

// Inverse of parse_rat: "num" when the denominator is 1, else "num/den".
inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double rat_double(const Rat& q) { return q.get_d(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

}  // namespace ergolab
