#include "ergolab/ergodic_opt.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace ergolab {

// --- Sft -------------------------------------------------------------------

Sft::Sft(int d, std::vector<std::vector<bool>> allowed)
    : d_(d), allowed_(std::move(allowed)) {
  if (d < 2) throw ValidationError("subshift needs >= 2 symbols");
  if (static_cast<int>(allowed_.size()) != d) {
    throw ValidationError("transition table must be d x d");
  }
  for (const auto& row : allowed_) {
    if (static_cast<int>(row.size()) != d) {
      throw ValidationError("transition table must be d x d");
    }
  }
  // Iteratively drop symbols with no surviving successor or predecessor.
  essential_.assign(static_cast<size_t>(d), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < d; ++s) {
      if (!essential_[static_cast<size_t>(s)]) continue;
      bool has_succ = false, has_pred = false;
      for (int t = 0; t < d; ++t) {
        if (!essential_[static_cast<size_t>(t)]) continue;
        has_succ = has_succ || allowed_[static_cast<size_t>(s)][static_cast<size_t>(t)];
        has_pred = has_pred || allowed_[static_cast<size_t>(t)][static_cast<size_t>(s)];
      }
      if (!has_succ || !has_pred) {
        essential_[static_cast<size_t>(s)] = false;
        changed = true;
      }
    }
  }
  for (int s = 0; s < d; ++s) {
    if (essential_[static_cast<size_t>(s)]) essential_list_.push_back(s);
  }
  if (essential_list_.empty()) {
    throw EmptySft("transition table admits no bi-infinite trajectory");
  }
}

Sft Sft::full_shift(int d) {
  return Sft(d, std::vector<std::vector<bool>>(static_cast<size_t>(d),
                                               std::vector<bool>(static_cast<size_t>(d), true)));
}

bool Sft::word_admissible(const Word& w) const {
  for (long j = 0; j < w.length(); ++j) {
    int s = w.at(j);
    if (s < 0 || s >= d_ || !essential(s)) return false;
    if (j + 1 < w.length() && !allowed(s, w.at(j + 1))) return false;
  }
  return true;
}

// --- graph build -------------------------------------------------------------

std::vector<std::vector<int>> WeightedTransitionGraph::successors() const {
  std::vector<std::vector<int>> out(nodes.size());
  for (const auto& e : edges) out[static_cast<size_t>(e.src)].push_back(e.dst);
  return out;
}

std::vector<std::vector<int>> WeightedTransitionGraph::predecessors() const {
  std::vector<std::vector<int>> out(nodes.size());
  for (const auto& e : edges) out[static_cast<size_t>(e.dst)].push_back(e.src);
  return out;
}

WeightedTransitionGraph build_transition_graph(const Sft& s, const CylinderFunction& f) {
  if (f.empty()) throw ValidationError("cannot recode the zero function");
  const Alphabet alpha(s.alphabet_size());
  if (!f.valid_for(alpha)) throw ValidationError("function words outside the alphabet");
  const CylinderFunction g = f.shifted(-f.window_lo());  // constraints now in [0, span)
  const long w = std::max(1L, g.window_hi());

  WeightedTransitionGraph out;
  out.window = static_cast<int>(w);

  // Depth-first enumeration in lex order over essential symbols.
  std::vector<int> cur;
  auto emit = [&](auto&& self) -> void {
    if (static_cast<long>(cur.size()) == w) {
      out.nodes.emplace_back(cur);
      return;
    }
    for (int t : s.essential_symbols()) {
      if (!cur.empty() && !s.allowed(cur.back(), t)) continue;
      cur.push_back(t);
      self(self);
      cur.pop_back();
    }
  };
  emit(emit);
  if (out.nodes.empty()) throw EmptySft("no admissible window of the required width");

  std::map<Word, int> index;
  for (size_t i = 0; i < out.nodes.size(); ++i) index[out.nodes[i]] = static_cast<int>(i);

  out.values_.reserve(out.nodes.size());
  for (const auto& u : out.nodes) {
    out.values_.push_back(g.value_on(PointWindow(0, u.symbols, "window")));
  }

  for (size_t i = 0; i < out.nodes.size(); ++i) {
    const Word& u = out.nodes[i];
    std::vector<int> next(u.symbols.begin() + 1, u.symbols.end());
    next.push_back(0);
    for (int t : s.essential_symbols()) {
      if (!s.allowed(u.symbols.back(), t)) continue;
      next.back() = t;
      auto it = index.find(Word(next));
      if (it == index.end()) continue;  // suffix ran into a trimmed corner
      out.edges.push_back({static_cast<int>(i), it->second, out.values_[i]});
    }
  }
  // The essential trim promises both degrees >= 1 for every window word;
  // gauge DP relies on it.
  auto pred = out.predecessors();
  auto succ = out.successors();
  for (size_t i = 0; i < out.nodes.size(); ++i) {
    if (pred[i].empty() || succ[i].empty()) {
      throw EmptySft("window graph lost a degree invariant");
    }
  }
  return out;
}

// --- finite gauge ------------------------------------------------------------

namespace {

void require_nonnegative(const WeightedTransitionGraph& g) {
  for (const auto& v : g.node_values()) {
    if (v < 0) {
      throw ValidationError(
          "gauge needs a nonnegative function; add a constant before calling");
    }
  }
}

std::vector<Rat> gauge_values(const WeightedTransitionGraph& g, const std::vector<long>& ks) {
  const auto preds = g.predecessors();
  const size_t n = g.nodes.size();
  std::vector<Rat> best(n), prev(n);
  for (size_t v = 0; v < n; ++v) best[v] = g.node_value(static_cast<int>(v));

  std::vector<Rat> out;
  size_t next_k = 0;
  long depth = 1;
  auto harvest = [&]() {
    while (next_k < ks.size() && ks[next_k] == depth) {
      Rat top = *std::max_element(best.begin(), best.end());
      out.push_back(top / depth);
      ++next_k;
    }
  };
  harvest();
  while (next_k < ks.size()) {
    prev.swap(best);
    for (size_t v = 0; v < n; ++v) {
      // Every node keeps a predecessor after the essential trim.
      const auto& pv = preds[v];
      Rat m = prev[static_cast<size_t>(pv.front())];
      for (size_t j = 1; j < pv.size(); ++j) {
        const Rat& c = prev[static_cast<size_t>(pv[j])];
        if (c > m) m = c;
      }
      best[v] = m + g.node_value(static_cast<int>(v));
    }
    ++depth;
    harvest();
  }
  return out;
}

}  // namespace

GaugeSeries gauge_series(const Sft& s, const CylinderFunction& f,
                         const std::vector<long>& ks) {
  if (ks.empty()) throw ValidationError("empty k schedule");
  for (size_t j = 0; j < ks.size(); ++j) {
    if (ks[j] < 1 || (j > 0 && ks[j] <= ks[j - 1])) {
      throw ValidationError("k schedule must be strictly increasing and >= 1");
    }
  }
  auto g = build_transition_graph(s, f);
  require_nonnegative(g);
  auto vals = gauge_values(g, ks);
  GaugeSeries series;
  for (size_t j = 0; j < ks.size(); ++j) series.entries.push_back({ks[j], vals[j]});
  return series;
}

Rat finite_gauge(const Sft& s, const CylinderFunction& f, long k) {
  if (k < 1) throw ValidationError("horizon k must be >= 1");
  return gauge_series(s, f, {k}).entries.front().value;
}

// --- max mean cycle ------------------------------------------------------------

namespace {

// Tarjan strongly connected components, iterative.
std::vector<std::vector<int>> scc_decompose(const std::vector<std::vector<int>>& succ) {
  const int n = static_cast<int>(succ.size());
  std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<size_t>(root)] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = true;
    while (!frames.empty()) {
      Frame& fr = frames.back();
      if (fr.child < succ[static_cast<size_t>(fr.v)].size()) {
        int w = succ[static_cast<size_t>(fr.v)][fr.child++];
        if (index[static_cast<size_t>(w)] == -1) {
          index[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = true;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(fr.v)] = std::min(low[static_cast<size_t>(fr.v)],
                                                    index[static_cast<size_t>(w)]);
        }
      } else {
        int v = fr.v;
        frames.pop_back();
        if (!frames.empty()) {
          int p = frames.back().v;
          low[static_cast<size_t>(p)] = std::min(low[static_cast<size_t>(p)], low[static_cast<size_t>(v)]);
        }
        if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
          std::vector<int> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = false;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  return comps;
}

// Karp's maximum cycle mean inside one strongly connected component.
std::optional<Rat> karp_scc(const WeightedTransitionGraph& g, const std::vector<int>& comp) {
  const int n = static_cast<int>(comp.size());
  std::vector<int> where(g.nodes.size(), -1);
  for (int i = 0; i < n; ++i) where[static_cast<size_t>(comp[static_cast<size_t>(i)])] = i;
  struct E {
    int src, dst;
    const Rat* w;
  };
  std::vector<E> edges;
  for (const auto& e : g.edges) {
    if (where[static_cast<size_t>(e.src)] >= 0 && where[static_cast<size_t>(e.dst)] >= 0) {
      edges.push_back({where[static_cast<size_t>(e.src)], where[static_cast<size_t>(e.dst)], &e.weight});
    }
  }
  if (edges.empty()) return std::nullopt;  // isolated node without self-loop

  const auto none = std::optional<Rat>();
  std::vector<std::vector<std::optional<Rat>>> dp(
      static_cast<size_t>(n) + 1, std::vector<std::optional<Rat>>(static_cast<size_t>(n), none));
  dp[0][0] = Rat(0);  // source: first node of the component
  for (int m = 1; m <= n; ++m) {
    for (const auto& e : edges) {
      const auto& from = dp[static_cast<size_t>(m - 1)][static_cast<size_t>(e.src)];
      if (!from) continue;
      Rat cand = *from + *e.w;
      auto& slot = dp[static_cast<size_t>(m)][static_cast<size_t>(e.dst)];
      if (!slot || cand > *slot) slot = cand;
    }
  }
  std::optional<Rat> best;
  for (int v = 0; v < n; ++v) {
    const auto& full = dp[static_cast<size_t>(n)][static_cast<size_t>(v)];
    if (!full) continue;
    std::optional<Rat> worst;
    for (int m = 0; m < n; ++m) {
      const auto& part = dp[static_cast<size_t>(m)][static_cast<size_t>(v)];
      if (!part) continue;
      Rat mean = (*full - *part) / (n - m);
      if (!worst || mean < *worst) worst = mean;
    }
    if (worst && (!best || *worst > *best)) best = worst;
  }
  return best;
}

}  // namespace

MaxMeanCycle max_mean_cycle(const WeightedTransitionGraph& g) {
  if (g.nodes.empty()) throw EmptySft("empty transition graph");
  const auto succ = g.successors();
  auto comps = scc_decompose(succ);

  std::optional<Rat> lambda;
  for (const auto& comp : comps) {
    auto v = karp_scc(g, comp);
    if (v && (!lambda || *v > *lambda)) lambda = *v;
  }
  if (!lambda) throw EmptySft("graph has no cycle");

  // Longest-path potentials for the shifted weights w - lambda (no positive
  // cycles remain, so n relaxation rounds stabilize).
  const size_t n = g.nodes.size();
  std::vector<Rat> dist(n, Rat(0));
  for (size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (const auto& e : g.edges) {
      Rat cand = dist[static_cast<size_t>(e.src)] + e.weight - *lambda;
      if (cand > dist[static_cast<size_t>(e.dst)]) {
        dist[static_cast<size_t>(e.dst)] = cand;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // Tight edges (dist[u] + w - lambda == dist[v]) carry exactly the optimal
  // cycles. Pick the shortest one; break ties toward small node indices.
  std::vector<std::vector<int>> tight(n);
  std::vector<std::vector<int>> tight_rev(n);
  for (const auto& e : g.edges) {
    if (dist[static_cast<size_t>(e.src)] + e.weight - *lambda == dist[static_cast<size_t>(e.dst)]) {
      tight[static_cast<size_t>(e.src)].push_back(e.dst);
      tight_rev[static_cast<size_t>(e.dst)].push_back(e.src);
    }
  }
  for (auto& v : tight) std::sort(v.begin(), v.end());

  std::vector<int> best_cycle;
  const long INF = static_cast<long>(n) + 1;
  for (size_t u = 0; u < n; ++u) {
    if (!best_cycle.empty() && best_cycle.size() == 1) break;  // cannot beat a self-loop
    // BFS distances toward u along reversed tight edges.
    std::vector<long> dist_to(n, INF);
    std::vector<int> queue{static_cast<int>(u)};
    dist_to[u] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int p : tight_rev[static_cast<size_t>(v)]) {
        if (dist_to[static_cast<size_t>(p)] == INF) {
          dist_to[static_cast<size_t>(p)] = dist_to[static_cast<size_t>(v)] + 1;
          queue.push_back(p);
        }
      }
    }
    long len = INF;
    for (int v : tight[u]) len = std::min(len, 1 + dist_to[static_cast<size_t>(v)]);
    if (len >= INF) continue;
    if (!best_cycle.empty() && len >= static_cast<long>(best_cycle.size())) continue;
    // Reconstruct: from u, repeatedly take the smallest tight successor that
    // still reaches u in the remaining number of steps.
    std::vector<int> cyc{static_cast<int>(u)};
    int cur = static_cast<int>(u);
    long remaining = len;
    while (remaining > 0) {
      for (int v : tight[static_cast<size_t>(cur)]) {
        if (dist_to[static_cast<size_t>(v)] == remaining - 1) {
          if (remaining > 1) cyc.push_back(v);
          cur = v;
          break;
        }
      }
      --remaining;
    }
    best_cycle = std::move(cyc);
  }

  return {*lambda, best_cycle};
}

// --- gauge gap -------------------------------------------------------------

GapReport gauge_gap(const MeasureModel& m, const Sft& s,
                    const CylinderFunction& f, long k_max) {
  if (alphabet_size(m) != s.alphabet_size()) {
    throw ValidationError("measure and subshift alphabets differ");
  }
  // Strictly positive measures charge every symbol and every allowed
  // transition, so support containment means: no forbidden block has
  // positive measure and no symbol was trimmed.
  for (int a = 0; a < s.alphabet_size(); ++a) {
    if (!s.essential(a)) {
      throw ValidationError("measure charges a symbol outside the subshift");
    }
    for (int b = 0; b < s.alphabet_size(); ++b) {
      if (!s.allowed(a, b) && word_measure(m, Word({a, b})) != 0) {
        throw ValidationError("measure charges a forbidden transition");
      }
    }
  }
  GapReport rep;
  rep.gamma_kmax = finite_gauge(s, f, k_max);
  rep.witness = max_mean_cycle(build_transition_graph(s, f));
  rep.mmc_value = rep.witness.value;
  rep.mu_integral = integral(m, f);
  rep.gap = rep.mmc_value - rep.mu_integral;
  rep.certified_not_uniquely_ergodic = rep.gap > 0;
  return rep;
}

}  // namespace ergolab
