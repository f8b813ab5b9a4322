#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/errors.hpp"
#include "ergolab/rational.hpp"

namespace ergolab {

// Finite alphabet {0, ..., size-1}.
struct Alphabet {
  int size = 2;

  explicit Alphabet(int d) : size(d) {
    if (d < 2) throw ValidationError("alphabet needs at least 2 symbols");
  }

  bool contains(int s) const { return 0 <= s && s < size; }
  bool operator==(const Alphabet&) const = default;
};

// Finite symbol block. Words index cylinders, so length >= 1.
struct Word {
  std::vector<int> symbols;

  Word() = default;
  explicit Word(std::vector<int> s) : symbols(std::move(s)) {
    if (symbols.empty()) throw ValidationError("empty word");
  }

  long length() const { return static_cast<long>(symbols.size()); }
  int at(long j) const { return symbols[static_cast<size_t>(j)]; }

  bool valid_for(const Alphabet& a) const {
    for (int s : symbols)
      if (!a.contains(s)) return false;
    return true;
  }

  auto operator<=>(const Word&) const = default;
};

// The function x -> [x agrees with `word` on positions offset .. offset+len).
// Offset n means the plain cylinder indicator composed with the shift n
// times, so the constraint window is [n, n + len).
struct ShiftedCylinderIndicator {
  long offset = 0;
  Word word;

  ShiftedCylinderIndicator() = default;
  ShiftedCylinderIndicator(long n, Word w) : offset(n), word(std::move(w)) {}

  long window_lo() const { return offset; }
  long window_hi() const { return offset + word.length(); }

  auto operator<=>(const ShiftedCylinderIndicator&) const = default;
};

// Finite rational linear combination of shifted cylinder indicators. This
// family is dense in the continuous functions on the shift, so it is the
// working class for every exact computation here.
class CylinderFunction {
 public:
  struct Term {
    Rat coeff;
    ShiftedCylinderIndicator indicator;
  };

  CylinderFunction() = default;

  // Canonicalizes: merges duplicate (offset, word) pairs, drops zero
  // coefficients, sorts by (offset, word). Equality is structural equality
  // of the canonical form.
  explicit CylinderFunction(std::vector<Term> terms);

  static CylinderFunction indicator(Word w, long offset = 0);
  // 1 written as the sum of the single-letter indicators at offset 0.
  static CylinderFunction constant_one(const Alphabet& a);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  bool valid_for(const Alphabet& a) const {
    for (const auto& t : terms_)
      if (!t.indicator.word.valid_for(a)) return false;
    return true;
  }

  // sum |coeff|, an upper bound for the sup norm.
  Rat coeff_norm() const;

  // Hull of all constraint windows; meaningful only when nonempty.
  long window_lo() const;
  long window_hi() const;

  CylinderFunction shifted(long n) const;  // compose with shift^n

  // Pointwise value on concrete data. Every constraint window must lie
  // inside x; otherwise InsufficientWindow.
  Rat value_on(const struct PointWindow& x) const;

  bool operator==(const CylinderFunction& o) const;

 private:
  std::vector<Term> terms_;
};

// A concrete finite stretch of a (conceptually bi-infinite) symbol sequence:
// symbol_at(j) is defined for lo <= j < hi. The provenance tag travels with
// the data through serialization so experiment outputs say where their
// input came from.
struct PointWindow {
  long lo = 0;
  long hi = 0;
  std::vector<int> symbols;
  std::string provenance;

  PointWindow() = default;
  PointWindow(long lo_, std::vector<int> syms, std::string prov)
      : lo(lo_),
        hi(lo_ + static_cast<long>(syms.size())),
        symbols(std::move(syms)),
        provenance(std::move(prov)) {
    if (symbols.empty()) throw ValidationError("empty point window");
  }

  long length() const { return hi - lo; }

  bool covers(long a, long b) const { return lo <= a && b <= hi; }

  int symbol_at(long j) const {
    if (j < lo || j >= hi) throw InsufficientWindow("index outside window");
    return symbols[static_cast<size_t>(j - lo)];
  }

  bool valid_for(const Alphabet& a) const {
    for (int s : symbols)
      if (!a.contains(s)) return false;
    return true;
  }
};

}  // namespace ergolab
