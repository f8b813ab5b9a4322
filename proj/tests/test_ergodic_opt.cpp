#include <doctest.h>

#include <algorithm>
#include <functional>
#include <vector>

#include "ergolab/ergodic_opt.hpp"

using namespace ergolab;

namespace {

Sft golden_mean() { return Sft(2, {{true, true}, {true, false}}); }

// Independent route: enumerate every admissible word of length k + w - 1 and
// take the best window average directly from the definition.
Rat gauge_bruteforce(const Sft& s, const CylinderFunction& f, long k) {
  long w = std::max<long>(1, f.window_hi() - f.window_lo());
  CylinderFunction g = f.shifted(-f.window_lo());
  long len = k + w - 1;
  Rat best(0);
  bool any = false;
  std::vector<int> word;
  std::function<void()> rec = [&]() {
    if (static_cast<long>(word.size()) == len) {
      Rat acc(0);
      PointWindow x(0, word, "bf");
      for (long i = 0; i < k; ++i) acc += g.shifted(i).value_on(x);
      acc /= k;
      if (!any || acc > best) best = acc;
      any = true;
      return;
    }
    for (int c = 0; c < s.alphabet_size(); ++c) {
      if (!s.essential(c)) continue;
      if (!word.empty() && !s.allowed(word.back(), c)) continue;
      word.push_back(c);
      rec();
      word.pop_back();
    }
  };
  rec();
  REQUIRE(any);
  return best;
}

Rat cycle_mean(const WeightedTransitionGraph& g, const std::vector<int>& cycle) {
  REQUIRE(!cycle.empty());
  Rat acc(0);
  for (int v : cycle) acc += g.node_value(v);
  return acc / static_cast<long>(cycle.size());
}

}  // namespace

TEST_CASE("sft validation and trimming") {
  CHECK_THROWS_AS(Sft(1, {{true}}), ValidationError);
  CHECK_THROWS_AS(Sft(2, {{true, true}}), ValidationError);  // shape mismatch
  // 0 -> 1 only: nothing is essential
  CHECK_THROWS_AS(Sft(2, {{false, true}, {false, false}}), EmptySft);
  // 1 has no successor, gets trimmed; 0 keeps its loop
  Sft s(2, {{true, true}, {false, false}});
  CHECK(s.essential(0));
  CHECK(!s.essential(1));
  CHECK(s.essential_symbols() == std::vector<int>{0});
  // trimming cascades: 2 feeds only 1, 1 feeds nothing
  Sft t(3, {{true, false, false}, {false, false, false}, {false, true, false}});
  CHECK(t.essential_symbols() == std::vector<int>{0});
  Sft full = Sft::full_shift(3);
  CHECK(full.essential_symbols() == std::vector<int>{0, 1, 2});
}

TEST_CASE("word admissibility") {
  Sft s = golden_mean();
  CHECK(s.word_admissible(Word({0, 1, 0, 1})));
  CHECK(!s.word_admissible(Word({0, 1, 1})));
  CHECK(!s.word_admissible(Word({2})));
  Sft trimmed(2, {{true, true}, {false, false}});
  CHECK(!trimmed.word_admissible(Word({1})));  // inessential symbol
}

TEST_CASE("transition graph for a single-letter function") {
  Sft s = golden_mean();
  WeightedTransitionGraph g = build_transition_graph(s, CylinderFunction::indicator(Word({1})));
  CHECK(g.window == 1);
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[0] == Word({0}));
  CHECK(g.nodes[1] == Word({1}));
  CHECK(g.node_value(0) == 0);
  CHECK(g.node_value(1) == 1);
  REQUIRE(g.edges.size() == 3);  // 00, 01, 10
  CHECK(g.edges[0].src == 0);
  CHECK(g.edges[0].dst == 0);
  CHECK(g.edges[2].src == 1);
  CHECK(g.edges[2].dst == 0);
  CHECK(g.edges[2].weight == 1);
}

TEST_CASE("transition graph recodes wider windows") {
  // window-2 function on the golden mean: nodes are the 3 admissible pairs
  Sft s = golden_mean();
  CylinderFunction f = CylinderFunction::indicator(Word({0, 1}));
  WeightedTransitionGraph g = build_transition_graph(s, f);
  CHECK(g.window == 2);
  REQUIRE(g.nodes.size() == 3);
  CHECK(g.nodes[0] == Word({0, 0}));
  CHECK(g.nodes[1] == Word({0, 1}));
  CHECK(g.nodes[2] == Word({1, 0}));
  CHECK(g.node_value(1) == 1);
  CHECK(g.node_value(0) == 0);
  // overlap edges: 00->00, 00->01, 01->10, 10->00, 10->01
  REQUIRE(g.edges.size() == 5);
  // every node keeps both degrees positive
  auto succ = g.successors();
  auto pred = g.predecessors();
  for (size_t v = 0; v < g.nodes.size(); ++v) {
    CHECK(!succ[v].empty());
    CHECK(!pred[v].empty());
  }
  // the offset does not matter: shifted copies recode identically
  WeightedTransitionGraph h = build_transition_graph(s, f.shifted(-5));
  CHECK(h.nodes == g.nodes);
  CHECK(h.values_ == g.values_);
}

TEST_CASE("finite gauge on the golden mean matches ceil(k/2)/k") {
  Sft s = golden_mean();
  CylinderFunction f = CylinderFunction::indicator(Word({1}));
  for (long k = 1; k <= 12; ++k) {
    CHECK(finite_gauge(s, f, k) == rat_frac((k + 1) / 2, k));
  }
  CHECK(finite_gauge(s, f, 7) == Rat(4, 7));
  CHECK(finite_gauge(s, f, 7) == gauge_bruteforce(s, f, 7));
}

TEST_CASE("finite gauge equals brute force on assorted small systems") {
  struct Case {
    Sft s;
    CylinderFunction f;
  };
  std::vector<Case> cases;
  cases.push_back({golden_mean(), CylinderFunction::indicator(Word({1}))});
  cases.push_back({golden_mean(), CylinderFunction::indicator(Word({0, 1}))});
  cases.push_back({golden_mean(),
                   CylinderFunction({{Rat(1, 2), {0, Word({0})}}, {Rat(2), {1, Word({1, 0})}}})});
  cases.push_back({Sft::full_shift(2), CylinderFunction::indicator(Word({1, 1}))});
  cases.push_back({Sft::full_shift(3),
                   CylinderFunction({{Rat(1), {0, Word({2})}}, {Rat(1, 3), {0, Word({0, 1})}}})});
  cases.push_back({Sft(3, {{true, true, false}, {false, false, true}, {true, false, false}}),
                   CylinderFunction::indicator(Word({1, 2}))});
  for (const auto& c : cases) {
    for (long k = 1; k <= 6; ++k) {
      CHECK(finite_gauge(c.s, c.f, k) == gauge_bruteforce(c.s, c.f, k));
    }
  }
}

TEST_CASE("finite gauge requires nonnegative values") {
  Sft s = golden_mean();
  CylinderFunction f({{Rat(-1), {0, Word({1})}}});
  CHECK_THROWS_AS(finite_gauge(s, f, 3), ValidationError);
}

TEST_CASE("gauge series shares one schedule") {
  Sft s = golden_mean();
  CylinderFunction f = CylinderFunction::indicator(Word({1}));
  GaugeSeries gs = gauge_series(s, f, {1, 2, 3, 10, 11});
  REQUIRE(gs.entries.size() == 5);
  for (const auto& e : gs.entries) {
    CHECK(e.value == finite_gauge(s, f, e.k));
  }
  CHECK_THROWS_AS(gauge_series(s, f, {3, 2}), ValidationError);
}

TEST_CASE("subadditivity of the scaled gauge") {
  Sft systems[] = {golden_mean(), Sft::full_shift(2),
                   Sft(3, {{true, true, false}, {true, false, true}, {false, true, true}})};
  for (const auto& s : systems) {
    CylinderFunction f = CylinderFunction::indicator(Word({0, 1}));
    std::vector<Rat> g(26, Rat(0));
    for (long k = 1; k <= 25; ++k) g[static_cast<size_t>(k)] = finite_gauge(s, f, k);
    for (long a = 1; a <= 12; ++a) {
      for (long b = 1; a + b <= 25; ++b) {
        CHECK(Rat(a + b) * g[static_cast<size_t>(a + b)] <=
              Rat(a) * g[static_cast<size_t>(a)] + Rat(b) * g[static_cast<size_t>(b)]);
      }
    }
  }
}

TEST_CASE("max mean cycle on handmade graphs") {
  // golden mean, chi at letter 1: best cycle alternates 0 and 1
  Sft s = golden_mean();
  WeightedTransitionGraph g = build_transition_graph(s, CylinderFunction::indicator(Word({1})));
  MaxMeanCycle mmc = max_mean_cycle(g);
  CHECK(mmc.value == Rat(1, 2));
  CHECK(mmc.cycle.size() == 2);
  CHECK(cycle_mean(g, mmc.cycle) == mmc.value);

  // full shift, chi at letter 0: the fixed point at 0 achieves 1
  WeightedTransitionGraph h =
      build_transition_graph(Sft::full_shift(2), CylinderFunction::indicator(Word({0})));
  MaxMeanCycle top = max_mean_cycle(h);
  CHECK(top.value == 1);
  CHECK(top.cycle == std::vector<int>{0});

  // two components with different means: self loop at 0 pays 1/3,
  // the 2-cycle 1<->2 pays (1/2 + 0)/2 = 1/4, so the loop wins
  Sft two(3, {{true, true, false}, {false, false, true}, {false, true, false}});
  CylinderFunction f({{Rat(1, 3), {0, Word({0})}}, {Rat(1, 2), {0, Word({1})}}});
  WeightedTransitionGraph gg = build_transition_graph(two, f);
  MaxMeanCycle win = max_mean_cycle(gg);
  CHECK(win.value == Rat(1, 3));
  CHECK(win.cycle == std::vector<int>{0});
}

TEST_CASE("max mean cycle witness is consistent and optimal vs enumeration") {
  // enumerate all simple cycles of small graphs and compare the best mean
  Sft systems[] = {golden_mean(),
                   Sft(3, {{false, true, true}, {true, false, true}, {true, true, false}}),
                   Sft(4, {{true, true, false, false},
                           {false, false, true, false},
                           {false, false, false, true},
                           {true, false, false, false}})};
  CylinderFunction fs[] = {
      CylinderFunction::indicator(Word({1})),
      CylinderFunction({{Rat(2, 5), {0, Word({0})}}, {Rat(1), {0, Word({1, 0})}}}),
  };
  for (const auto& s : systems) {
    for (const auto& f : fs) {
      if (!f.valid_for(Alphabet(s.alphabet_size()))) continue;
      WeightedTransitionGraph g = build_transition_graph(s, f);
      MaxMeanCycle mmc = max_mean_cycle(g);
      // witness really is a cycle of the stated mean
      auto succ = g.successors();
      for (size_t j = 0; j < mmc.cycle.size(); ++j) {
        int u = mmc.cycle[j];
        int v = mmc.cycle[(j + 1) % mmc.cycle.size()];
        CHECK(std::find(succ[static_cast<size_t>(u)].begin(),
                        succ[static_cast<size_t>(u)].end(),
                        v) != succ[static_cast<size_t>(u)].end());
      }
      CHECK(cycle_mean(g, mmc.cycle) == mmc.value);
      // no simple cycle beats it (DFS over all simple cycles)
      int n = static_cast<int>(g.nodes.size());
      Rat best(-1);
      std::vector<int> stack;
      std::vector<bool> on(static_cast<size_t>(n), false);
      std::function<void(int, int)> dfs = [&](int start, int u) {
        for (int v : succ[static_cast<size_t>(u)]) {
          if (v == start) {
            Rat acc(0);
            for (int w : stack) acc += g.node_value(w);
            acc /= static_cast<long>(stack.size());
            if (acc > best) best = acc;
          } else if (v > start && !on[static_cast<size_t>(v)]) {
            on[static_cast<size_t>(v)] = true;
            stack.push_back(v);
            dfs(start, v);
            stack.pop_back();
            on[static_cast<size_t>(v)] = false;
          }
        }
      };
      for (int v = 0; v < n; ++v) {
        stack = {v};
        on.assign(static_cast<size_t>(n), false);
        on[static_cast<size_t>(v)] = true;
        dfs(v, v);
      }
      CHECK(best == mmc.value);
    }
  }
}

TEST_CASE("finite gauges sandwich the cycle limit from above") {
  Sft systems[] = {golden_mean(), Sft::full_shift(2),
                   Sft(3, {{true, true, false}, {true, false, true}, {false, true, true}})};
  CylinderFunction f = CylinderFunction::indicator(Word({1, 0}));
  for (const auto& s : systems) {
    WeightedTransitionGraph g = build_transition_graph(s, f);
    MaxMeanCycle mmc = max_mean_cycle(g);
    for (long k = 1; k <= 30; ++k) {
      CHECK(finite_gauge(s, f, k) >= mmc.value);
    }
  }
}

TEST_CASE("gauge gap certifies the golden mean with a markov reference") {
  // strictly positive markov measure supported exactly on the golden mean
  MeasureModel m = MarkovMeasure({{Rat(13, 21), Rat(8, 21)}, {Rat(1), Rat(0)}});
  Sft s = golden_mean();
  CylinderFunction f = CylinderFunction::indicator(Word({1}));
  GapReport rep = gauge_gap(m, s, f, 40);
  CHECK(rep.mu_integral == Rat(8, 29));  // stationary mass of letter 1
  CHECK(rep.mmc_value == Rat(1, 2));
  CHECK(rep.gap == Rat(13, 58));
  CHECK(rep.certified_not_uniquely_ergodic);
  CHECK(rep.gamma_kmax == Rat(1, 2));  // ceil(40/2)/40
  CHECK(rep.gamma_kmax >= rep.mmc_value);
}

TEST_CASE("gauge gap rejects measures off the subshift") {
  Sft s = golden_mean();
  CylinderFunction f = CylinderFunction::indicator(Word({1}));
  // bernoulli charges the forbidden block 11
  MeasureModel b = BernoulliMeasure({Rat(1, 2), Rat(1, 2)});
  CHECK_THROWS_AS(gauge_gap(b, s, f, 10), ValidationError);
  // markov with a positive 1->1 entry also charges it
  MeasureModel m = MarkovMeasure({{Rat(1, 2), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2)}});
  CHECK_THROWS_AS(gauge_gap(m, s, f, 10), ValidationError);
  // alphabet size mismatch
  MeasureModel m3 = MarkovMeasure({{Rat(1, 3), Rat(1, 3), Rat(1, 3)},
                                   {Rat(1, 2), Rat(1, 4), Rat(1, 4)},
                                   {Rat(1), Rat(0), Rat(0)}});
  CHECK_THROWS_AS(gauge_gap(m3, s, f, 10), ValidationError);
}
