#include <doctest.h>

#include <vector>

#include "ergolab/generators.hpp"
#include "ergolab/stdiff.hpp"

using namespace ergolab;

namespace {

MeasureModel uniform2() { return BernoulliMeasure({Rat(1, 2), Rat(1, 2)}); }
MeasureModel skew2() { return BernoulliMeasure({Rat(1, 3), Rat(2, 3)}); }
MeasureModel markov2() {
  return MarkovMeasure({{Rat(1, 2), Rat(1, 2)}, {Rat(2, 3), Rat(1, 3)}});
}

// Independent route: E[ind o shift^i | window] as a ratio of merged-cylinder
// measures. conditional_average must reproduce this exactly.
Rat conditional_by_ratio(const MeasureModel& m, const PointWindow& x, long k, long i,
                         const ShiftedCylinderIndicator& ind) {
  std::vector<int> win;
  for (long j = 0; j < k; ++j) win.push_back(x.symbol_at(j));
  std::vector<Constraint> joint = {{0, Word(win)}, {i + ind.offset, ind.word}};
  Rat denom = word_measure(m, Word(win));
  return constraint_merge_measure(m, joint) / denom;
}

}  // namespace

TEST_CASE("conditional_average equals the merged-measure ratio") {
  MeasureModel models[] = {uniform2(), skew2(), markov2()};
  std::vector<Word> words = {Word({0}), Word({1, 0}), Word({0, 1, 1})};
  for (const auto& m : models) {
    std::uint64_t seed = 11;
    for (long k = 2; k <= 6; ++k) {
      PointWindow x = random_window(m, k, seed++);
      for (const auto& w : words) {
        for (long off = -3; off <= 3; ++off) {
          for (long i = 0; i < k; ++i) {
            ShiftedCylinderIndicator ind(off, w);
            CHECK(conditional_average(m, x, k, i, ind) ==
                  conditional_by_ratio(m, x, k, i, ind));
          }
        }
      }
    }
  }
}

TEST_CASE("conditional_average input validation") {
  MeasureModel m = uniform2();
  PointWindow x(0, {0, 1, 0}, "test");
  ShiftedCylinderIndicator ind(0, Word({0}));
  CHECK_THROWS_AS(conditional_average(m, x, 0, 0, ind), ValidationError);
  CHECK_THROWS_AS(conditional_average(m, x, 3, 3, ind), ValidationError);
  CHECK_THROWS_AS(conditional_average(m, x, 3, -1, ind), ValidationError);
  CHECK_THROWS_AS(conditional_average(m, x, 4, 0, ind), InsufficientWindow);
  ShiftedCylinderIndicator bad(0, Word({2}));
  CHECK_THROWS_AS(conditional_average(m, x, 3, 0, bad), ValidationError);
}

TEST_CASE("zero-measure windows are rejected") {
  // 1 -> 1 is forbidden, so any window containing it has measure zero
  MeasureModel m = MarkovMeasure({{Rat(1, 2), Rat(1, 2)}, {Rat(1), Rat(0)}});
  PointWindow x(0, {0, 1, 1, 0}, "test");
  ShiftedCylinderIndicator ind(0, Word({0}));
  CHECK_THROWS_AS(conditional_average(m, x, 4, 0, ind), ZeroMeasureCylinder);
  CHECK_THROWS_AS(stdiff_value(m, x, 4, CylinderFunction::indicator(Word({0}))),
                  ZeroMeasureCylinder);
  // the prefix of length 2 is fine
  CHECK(stdiff_value(m, x, 2, CylinderFunction::indicator(Word({0}))) == Rat(1, 2));
}

TEST_CASE("single-letter average is the letter frequency, any measure") {
  PointWindow x(0, {1, 0, 0, 1, 0}, "test");
  CylinderFunction chi0 = CylinderFunction::indicator(Word({0}));
  MeasureModel models[] = {uniform2(), skew2(), markov2()};
  for (const auto& m : models) {
    CHECK(stdiff_value(m, x, 5, chi0) == Rat(3, 5));
    CHECK(stdiff_value(m, x, 5, chi0) == frequency(x, Word({0}), 5, FrequencyCap::ToKMinusOne));
  }
}

TEST_CASE("stdiff_value linearity in f") {
  MeasureModel m = skew2();
  PointWindow x = random_window(m, 9, 3);
  CylinderFunction f({{Rat(2, 3), {0, Word({0, 1})}}, {Rat(-1), {1, Word({1})}}});
  CylinderFunction fa = CylinderFunction::indicator(Word({0, 1}), 0);
  CylinderFunction fb = CylinderFunction::indicator(Word({1}), 1);
  Rat whole = stdiff_value(m, x, 9, f);
  Rat parts = Rat(2, 3) * stdiff_value(m, x, 9, fa) - stdiff_value(m, x, 9, fb);
  CHECK(whole == parts);
}

TEST_CASE("stdiff_value by direct definition on a tiny case") {
  // k = 3, f = chi_[01] at offset 0, x window (0,1,0), uniform Bernoulli.
  // i = 0: positions 0,1 interior, match (0,1): 1
  // i = 1: positions 1,2 interior, (1,0) vs word (0,1): 0
  // i = 2: position 2 interior matches 0, position 3 integrates to p(1) = 1/2
  // average = (1 + 0 + 1/2) / 3 = 1/2
  MeasureModel m = uniform2();
  PointWindow x(0, {0, 1, 0}, "test");
  CHECK(stdiff_value(m, x, 3, CylinderFunction::indicator(Word({0, 1}))) == Rat(1, 2));
}

TEST_CASE("stdiff_series agrees with stdiff_value at every k") {
  MeasureModel models[] = {uniform2(), markov2()};
  CylinderFunction fs[] = {
      CylinderFunction::indicator(Word({0})),
      CylinderFunction::indicator(Word({1, 0})),
      CylinderFunction({{Rat(1, 2), {-1, Word({1, 1})}}, {Rat(3), {2, Word({0})}}}),
  };
  std::vector<long> ks = {1, 2, 3, 5, 8, 13, 21};
  for (const auto& m : models) {
    PointWindow x = random_window(m, 25, 77);
    for (const auto& f : fs) {
      DiffSeries s = stdiff_series(m, x, ks, f);
      REQUIRE(s.entries.size() == ks.size());
      for (size_t j = 0; j < ks.size(); ++j) {
        CHECK(s.entries[j].k == ks[j]);
        REQUIRE(s.entries[j].value.has_value());
        CHECK(*s.entries[j].value == stdiff_value(m, x, ks[j], f));
        CHECK(s.entries[j].value_float ==
              doctest::Approx(rat_double(*s.entries[j].value)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("stdiff_series wants a strictly increasing schedule") {
  MeasureModel m = uniform2();
  PointWindow x = random_window(m, 10, 1);
  CylinderFunction f = CylinderFunction::indicator(Word({0}));
  CHECK_THROWS_AS(stdiff_series(m, x, {3, 3}, f), ValidationError);
  CHECK_THROWS_AS(stdiff_series(m, x, {5, 2}, f), ValidationError);
  CHECK_THROWS_AS(stdiff_series(m, x, {0, 2}, f), ValidationError);
  CHECK_THROWS_AS(stdiff_series(m, x, {}, f), ValidationError);
}

TEST_CASE("frequency caps") {
  //      index: 0 1 2 3 4 5 6
  //      x    : 0 1 0 1 1 0 1
  PointWindow x(0, {0, 1, 0, 1, 1, 0, 1}, "test");
  Word w({0, 1});
  // occurrences of 01 start at 0, 2, 5
  CHECK(frequency(x, w, 6, FrequencyCap::ToKMinusL) == Rat(1, 3));   // 2 hits, i <= 4
  CHECK(frequency(x, w, 6, FrequencyCap::ToKMinusOne) == Rat(1, 2)); // 3 hits, i <= 5, needs x_6
  CHECK(frequency(x, w, 7, FrequencyCap::ToKMinusL) == Rat(3, 7));
  CHECK_THROWS_AS(frequency(x, w, 7, FrequencyCap::ToKMinusOne), InsufficientWindow);
  // single letters: the caps coincide
  CHECK(frequency(x, Word({1}), 7, FrequencyCap::ToKMinusL) ==
        frequency(x, Word({1}), 7, FrequencyCap::ToKMinusOne));
  // degenerate: k shorter than the word
  CHECK(frequency(x, w, 1, FrequencyCap::ToKMinusL) == 0);
}

TEST_CASE("frequency cap gap obeys the (len-1)/k tail bound") {
  MeasureModel m = skew2();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    long len = 1 + static_cast<long>(seed % 4);
    long k = 5 + static_cast<long>(counter_hash(99, seed, 0, 0) % 40);
    if (k < len) continue;
    PointWindow x = random_window(m, k + len - 1, seed);
    std::vector<int> ws;
    for (long j = 0; j < len; ++j) {
      ws.push_back(static_cast<int>(counter_hash(7, seed, static_cast<std::uint64_t>(j), 0) % 2));
    }
    Word w(ws);
    Rat gap = rat_abs(frequency(x, w, k, FrequencyCap::ToKMinusOne) -
                      frequency(x, w, k, FrequencyCap::ToKMinusL));
    CHECK(gap <= rat_frac(len - 1, k));
  }
}

TEST_CASE("normality report on the pathological prefix") {
  // x on [0, 8) is 1 0 0 1 1 1 1 0; k = 7, max_len = 2.
  MeasureModel m = uniform2();
  PointWindow x = pathological_point(0, 8);
  NormalityReport rep = normality_report(m, x, 2, 7);
  CHECK(rep.k == 7);
  CHECK(rep.max_len == 2);
  REQUIRE(rep.rows.size() == 6);  // 2 words of length 1, 4 of length 2
  // length-1 rows in lex order
  CHECK(rep.rows[0].word == Word({0}));
  CHECK(rep.rows[0].freq == Rat(2, 7));
  CHECK(rep.rows[0].mu == Rat(1, 2));
  CHECK(rep.rows[0].deviation == Rat(3, 14));
  CHECK(rep.rows[1].freq == Rat(5, 7));
  // length-2 rows: starts i in [0, 5]
  CHECK(rep.rows[2].word == Word({0, 0}));
  CHECK(rep.rows[2].freq == Rat(1, 7));
  CHECK(rep.rows[3].word == Word({0, 1}));
  CHECK(rep.rows[3].freq == Rat(1, 7));
  CHECK(rep.rows[4].word == Word({1, 0}));
  CHECK(rep.rows[4].freq == Rat(1, 7));
  CHECK(rep.rows[5].word == Word({1, 1}));
  CHECK(rep.rows[5].freq == Rat(3, 7));
  CHECK(rep.max_deviation == Rat(3, 14));
  // needs data out to k + max_len - 1
  PointWindow shorty = pathological_point(0, 7);
  CHECK_THROWS_AS(normality_report(m, shorty, 2, 7), InsufficientWindow);
}

TEST_CASE("long-window frequencies settle near the measure") {
  // deterministic sample; a 20k-step window of a mixing chain stays within
  // a few percent of every short word measure
  MeasureModel m = markov2();
  PointWindow x = random_window(m, 20000, 5);
  NormalityReport rep = normality_report(m, x, 2, 19000);
  CHECK(rat_double(rep.max_deviation) < 0.02);
}
