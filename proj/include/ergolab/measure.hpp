#pragma once

#include <span>
#include <variant>
#include <vector>

#include "ergolab/symbolic.hpp"

namespace ergolab {

// i.i.d. product measure with strictly positive exact-rational marginals.
class BernoulliMeasure {
 public:
  explicit BernoulliMeasure(std::vector<Rat> p);

  int alphabet_size() const { return static_cast<int>(p_.size()); }
  const Rat& p(int s) const { return p_[static_cast<size_t>(s)]; }
  const std::vector<Rat>& probs() const { return p_; }

 private:
  std::vector<Rat> p_;
};

// Stationary Markov chain measure. Rows of P sum to 1, the positive
// transitions form a strongly connected digraph on all states, and pi is
// the stationary row vector solved exactly at construction (unique by
// irreducibility, strictly positive).
class MarkovMeasure {
 public:
  explicit MarkovMeasure(std::vector<std::vector<Rat>> P);

  int alphabet_size() const { return static_cast<int>(P_.size()); }
  const Rat& transition(int a, int b) const {
    return P_[static_cast<size_t>(a)][static_cast<size_t>(b)];
  }
  const std::vector<std::vector<Rat>>& matrix() const { return P_; }
  const Rat& stationary(int s) const { return pi_[static_cast<size_t>(s)]; }
  const std::vector<Rat>& stationary_vector() const { return pi_; }

  // (P^n)(a, b) by exact binary exponentiation; n >= 0.
  Rat transition_power(long n, int a, int b) const;

 private:
  std::vector<std::vector<Rat>> P_;
  std::vector<Rat> pi_;
};

using MeasureModel = std::variant<BernoulliMeasure, MarkovMeasure>;

int alphabet_size(const MeasureModel& m);

// mu of the cylinder fixed by `w` at any position (both models are shift
// invariant, so the position does not matter).
Rat word_measure(const MeasureModel& m, const Word& w);

// One pinned block: positions [offset, offset + word.length).
struct Constraint {
  long offset = 0;
  Word word;
};

// mu of the intersection of the constraint cylinders. Overlapping
// constraints that disagree give 0. Markov gaps are bridged with exact
// matrix powers.
Rat constraint_merge_measure(const MeasureModel& m,
                             std::span<const Constraint> cs);

// Integral of a cylinder function: sum of coeff * word_measure, offsets
// dropped by shift invariance.
Rat integral(const MeasureModel& m, const CylinderFunction& f);

}  // namespace ergolab
