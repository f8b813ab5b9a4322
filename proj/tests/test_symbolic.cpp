#include <doctest.h>

#include <vector>

#include "ergolab/measure.hpp"

using namespace ergolab;

namespace {

// Independent route for constraint_merge_measure: enumerate every word on
// the merged span and add up the plain word measures of the compatible ones.
Rat merge_measure_bruteforce(const MeasureModel& m, const std::vector<Constraint>& cs) {
  long lo = cs.front().offset;
  long hi = cs.front().offset + cs.front().word.length();
  for (const auto& c : cs) {
    lo = std::min(lo, c.offset);
    hi = std::max(hi, c.offset + c.word.length());
  }
  int d = alphabet_size(m);
  long span = hi - lo;
  std::vector<int> w(static_cast<size_t>(span), 0);
  Rat total(0);
  while (true) {
    bool ok = true;
    for (const auto& c : cs) {
      for (long j = 0; j < c.word.length() && ok; ++j) {
        if (w[static_cast<size_t>(c.offset - lo + j)] != c.word.at(j)) ok = false;
      }
    }
    if (ok) total += word_measure(m, Word(w));
    size_t pos = 0;
    while (pos < w.size() && ++w[pos] == d) w[pos++] = 0;
    if (pos == w.size()) break;
  }
  return total;
}

}  // namespace

TEST_CASE("alphabet and word validation") {
  CHECK_THROWS_AS(Alphabet(1), ValidationError);
  Alphabet a(3);
  CHECK(a.contains(0));
  CHECK(a.contains(2));
  CHECK(!a.contains(3));
  CHECK(!a.contains(-1));
  CHECK_THROWS_AS(Word(std::vector<int>{}), ValidationError);
  CHECK(Word({0, 2}).valid_for(a));
  CHECK(!Word({0, 3}).valid_for(a));
}

TEST_CASE("cylinder function canonicalization") {
  Word w01({0, 1});
  CylinderFunction f({{Rat(1, 2), {0, w01}},
                      {Rat(1, 2), {0, w01}},
                      {Rat(1), {2, Word({1})}},
                      {Rat(0), {5, Word({0})}}});
  REQUIRE(f.terms().size() == 2);
  CHECK(f.terms()[0].coeff == 1);
  CHECK(f.terms()[0].indicator.offset == 0);
  CHECK(f.terms()[0].indicator.word == w01);
  CHECK(f.terms()[1].indicator.offset == 2);
  CHECK(f.coeff_norm() == 2);
  CHECK(f.window_lo() == 0);
  CHECK(f.window_hi() == 3);

  // cancellation produces the empty function
  CylinderFunction g({{Rat(1), {0, w01}}, {Rat(-1), {0, w01}}});
  CHECK(g.empty());

  CylinderFunction h = f.shifted(3);
  CHECK(h.window_lo() == 3);
  CHECK(h.window_hi() == 6);
  CHECK(h.terms()[0].indicator.offset == 3);
}

TEST_CASE("value_on matches the data") {
  PointWindow x(0, {1, 0, 0, 1, 1}, "test");
  CHECK(x.length() == 5);
  CHECK(x.symbol_at(0) == 1);
  CHECK(x.symbol_at(4) == 1);
  CHECK_THROWS_AS(x.symbol_at(5), InsufficientWindow);
  CHECK_THROWS_AS(x.symbol_at(-1), InsufficientWindow);
  CHECK(x.covers(0, 5));
  CHECK(!x.covers(0, 6));

  CylinderFunction f = CylinderFunction::indicator(Word({0, 0}), 1);
  CHECK(f.value_on(x) == 1);
  CylinderFunction g = CylinderFunction::indicator(Word({0, 0}), 2);
  CHECK(g.value_on(x) == 0);

  CylinderFunction mix({{Rat(2), {0, Word({1})}}, {Rat(-1, 3), {3, Word({1, 1})}}});
  CHECK(mix.value_on(x) == Rat(5, 3));

  CylinderFunction off = CylinderFunction::indicator(Word({1}), 5);
  CHECK_THROWS_AS(off.value_on(x), InsufficientWindow);
}

TEST_CASE("constant_one really is 1") {
  Alphabet a(3);
  CylinderFunction one = CylinderFunction::constant_one(a);
  PointWindow x(0, {2, 0, 1}, "test");
  CHECK(one.value_on(x) == 1);
  MeasureModel m = BernoulliMeasure({Rat(1, 6), Rat(2, 6), Rat(3, 6)});
  CHECK(integral(m, one) == 1);
}

TEST_CASE("bernoulli validation and word measure") {
  CHECK_THROWS_AS(BernoulliMeasure({Rat(1, 2), Rat(1, 3)}), ValidationError);
  CHECK_THROWS_AS(BernoulliMeasure({Rat(0), Rat(1)}), ValidationError);
  CHECK_THROWS_AS(BernoulliMeasure({Rat(1)}), ValidationError);

  MeasureModel uni = BernoulliMeasure({Rat(1, 2), Rat(1, 2)});
  CHECK(word_measure(uni, Word({0, 1})) == Rat(1, 4));
  MeasureModel skew = BernoulliMeasure({Rat(1, 3), Rat(2, 3)});
  CHECK(word_measure(skew, Word({1, 1, 0})) == Rat(4, 27));
}

TEST_CASE("markov stationary vector and word measure") {
  // P = [[1/2, 1/2], [1, 0]]: pi = (2/3, 1/3)
  MarkovMeasure mk({{Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(0)}});
  CHECK(mk.stationary(0) == Rat(2, 3));
  CHECK(mk.stationary(1) == Rat(1, 3));

  MeasureModel m = mk;
  CHECK(word_measure(m, Word({1, 1})) == 0);  // forbidden transition
  CHECK(word_measure(m, Word({0, 1, 0})) == Rat(1, 3));
  CHECK(word_measure(m, Word({0})) == Rat(2, 3));

  // stationarity: pi P = pi, checked against a fresh row product
  for (int b = 0; b < 2; ++b) {
    Rat acc(0);
    for (int a = 0; a < 2; ++a) acc += mk.stationary(a) * mk.transition(a, b);
    CHECK(acc == mk.stationary(b));
  }
}

TEST_CASE("markov validation") {
  CHECK_THROWS_AS(MarkovMeasure({{Rat(1, 2), Rat(1, 3)}, {Rat(1), Rat(0)}}),
                  ValidationError);  // row sum != 1
  CHECK_THROWS_AS(MarkovMeasure({{Rat(3, 2), Rat(-1, 2)}, {Rat(1), Rat(0)}}),
                  ValidationError);  // negative entry
  CHECK_THROWS_AS(MarkovMeasure({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}),
                  ValidationError);  // two closed classes
  CHECK_THROWS_AS(MarkovMeasure({{Rat(1, 2), Rat(1, 2)}}), ValidationError);  // d = 1
}

TEST_CASE("transition_power agrees with repeated multiplication") {
  MarkovMeasure mk({{Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(0)}});
  // P^2 = [[3/4, 1/4], [1/2, 1/2]]
  CHECK(mk.transition_power(0, 0, 0) == 1);
  CHECK(mk.transition_power(0, 0, 1) == 0);
  CHECK(mk.transition_power(1, 0, 1) == Rat(1, 2));
  CHECK(mk.transition_power(2, 0, 0) == Rat(3, 4));
  CHECK(mk.transition_power(2, 1, 1) == Rat(1, 2));
  // row sums of every power stay 1
  for (long n = 0; n <= 6; ++n) {
    for (int a = 0; a < 2; ++a) {
      CHECK(mk.transition_power(n, a, 0) + mk.transition_power(n, a, 1) == 1);
    }
  }
}

TEST_CASE("constraint merge vs enumeration, bernoulli") {
  MeasureModel uni = BernoulliMeasure({Rat(1, 2), Rat(1, 2)});
  std::vector<Constraint> cs = {{0, Word({0})}, {2, Word({0})}};
  CHECK(constraint_merge_measure(uni, cs) == Rat(1, 4));
  CHECK(constraint_merge_measure(uni, cs) == merge_measure_bruteforce(uni, cs));

  // overlap that agrees
  cs = {{0, Word({0, 1})}, {1, Word({1, 0})}};
  CHECK(constraint_merge_measure(uni, cs) == Rat(1, 8));
  CHECK(constraint_merge_measure(uni, cs) == merge_measure_bruteforce(uni, cs));

  // overlap that disagrees
  cs = {{0, Word({0, 1})}, {1, Word({0, 0})}};
  CHECK(constraint_merge_measure(uni, cs) == 0);
}

TEST_CASE("constraint merge vs enumeration, markov") {
  MeasureModel m = MarkovMeasure({{Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(0)}});
  std::vector<Constraint> cs = {{0, Word({0})}, {2, Word({0})}};
  CHECK(constraint_merge_measure(m, cs) == Rat(1, 2));
  CHECK(constraint_merge_measure(m, cs) == merge_measure_bruteforce(m, cs));

  cs = {{-1, Word({1})}, {1, Word({1, 0})}};
  CHECK(constraint_merge_measure(m, cs) == merge_measure_bruteforce(m, cs));

  // three blocks with two gaps on a 3-state chain
  MeasureModel m3 = MarkovMeasure({{Rat(1, 3), Rat(1, 3), Rat(1, 3)},
                                   {Rat(1, 2), Rat(0), Rat(1, 2)},
                                   {Rat(1, 4), Rat(1, 4), Rat(1, 2)}});
  cs = {{0, Word({2, 0})}, {4, Word({1})}, {7, Word({0, 2})}};
  CHECK(constraint_merge_measure(m3, cs) == merge_measure_bruteforce(m3, cs));
}

TEST_CASE("constraint merge exhaustive cross-check on small random cases") {
  MeasureModel models[] = {
      MeasureModel(BernoulliMeasure({Rat(1, 4), Rat(3, 4)})),
      MeasureModel(MarkovMeasure({{Rat(1, 2), Rat(1, 2)}, {Rat(2, 3), Rat(1, 3)}})),
  };
  for (const auto& m : models) {
    for (long off1 = -2; off1 <= 2; ++off1) {
      for (long off2 = 0; off2 <= 4; ++off2) {
        for (int s1 = 0; s1 < 2; ++s1) {
          for (int s2 = 0; s2 < 2; ++s2) {
            std::vector<Constraint> cs = {{off1, Word({s1, 1 - s1})}, {off2, Word({s2})}};
            CHECK(constraint_merge_measure(m, cs) == merge_measure_bruteforce(m, cs));
          }
        }
      }
    }
  }
}

TEST_CASE("integral is linear and matches word_measure on indicators") {
  MeasureModel m = MarkovMeasure({{Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(0)}});
  Word w({0, 1});
  CHECK(integral(m, CylinderFunction::indicator(w)) == word_measure(m, w));
  // shift invariance: the offset does not change the integral
  CHECK(integral(m, CylinderFunction::indicator(w, 7)) == word_measure(m, w));
  CylinderFunction f({{Rat(2), {0, Word({0})}}, {Rat(-1, 2), {3, Word({1, 0})}}});
  CHECK(integral(m, f) == Rat(2) * word_measure(m, Word({0})) -
                              Rat(1, 2) * word_measure(m, Word({1, 0})));
}
