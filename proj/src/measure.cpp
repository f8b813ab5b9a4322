#include "ergolab/measure.hpp"

#include <algorithm>
#include <map>

namespace ergolab {

// --- CylinderFunction ----------------------------------------------------

CylinderFunction::CylinderFunction(std::vector<Term> terms) {
  std::map<ShiftedCylinderIndicator, Rat> acc;
  for (auto& t : terms) {
    t.coeff.canonicalize();  // callers may hand over raw num/den pairs
    acc[t.indicator] += t.coeff;
  }
  for (auto& [ind, c] : acc) {
    if (c != 0) terms_.push_back({c, ind});
  }
}

CylinderFunction CylinderFunction::indicator(Word w, long offset) {
  return CylinderFunction({{Rat(1), ShiftedCylinderIndicator(offset, std::move(w))}});
}

CylinderFunction CylinderFunction::constant_one(const Alphabet& a) {
  std::vector<Term> ts;
  for (int s = 0; s < a.size; ++s) {
    ts.push_back({Rat(1), ShiftedCylinderIndicator(0, Word({s}))});
  }
  return CylinderFunction(std::move(ts));
}

Rat CylinderFunction::coeff_norm() const {
  Rat out(0);
  for (const auto& t : terms_) out += rat_abs(t.coeff);
  return out;
}

long CylinderFunction::window_lo() const {
  long lo = 0;
  bool first = true;
  for (const auto& t : terms_) {
    long w = t.indicator.window_lo();
    if (first || w < lo) lo = w;
    first = false;
  }
  return lo;
}

long CylinderFunction::window_hi() const {
  long hi = 0;
  bool first = true;
  for (const auto& t : terms_) {
    long w = t.indicator.window_hi();
    if (first || w > hi) hi = w;
    first = false;
  }
  return hi;
}

CylinderFunction CylinderFunction::shifted(long n) const {
  std::vector<Term> ts = terms_;
  for (auto& t : ts) t.indicator.offset += n;
  return CylinderFunction(std::move(ts));
}

Rat CylinderFunction::value_on(const PointWindow& x) const {
  Rat out(0);
  for (const auto& t : terms_) {
    const auto& ind = t.indicator;
    bool match = true;
    for (long j = 0; j < ind.word.length(); ++j) {
      if (x.symbol_at(ind.offset + j) != ind.word.at(j)) {
        match = false;
        break;
      }
    }
    if (match) out += t.coeff;
  }
  return out;
}

bool CylinderFunction::operator==(const CylinderFunction& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].indicator != o.terms_[i].indicator) return false;
    if (terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

// --- BernoulliMeasure ----------------------------------------------------

BernoulliMeasure::BernoulliMeasure(std::vector<Rat> p) : p_(std::move(p)) {
  if (p_.size() < 2) throw ValidationError("bernoulli needs >= 2 symbols");
  Rat sum(0);
  for (auto& q : p_) {
    q.canonicalize();  // callers may hand over raw num/den pairs
    if (q <= 0) throw ValidationError("bernoulli probabilities must be > 0");
    sum += q;
  }
  if (sum != 1) throw ValidationError("bernoulli probabilities must sum to 1");
}

// --- MarkovMeasure -------------------------------------------------------

namespace {

// Solves pi P = pi, sum pi = 1 by exact Gaussian elimination on the
// transpose system. Irreducibility makes the solution unique.
std::vector<Rat> stationary_solve(const std::vector<std::vector<Rat>>& P) {
  const int d = static_cast<int>(P.size());
  // Rows 0..d-2: (P^T - I) pi = 0. Row d-1: sum pi = 1.
  std::vector<std::vector<Rat>> a(static_cast<size_t>(d),
                                  std::vector<Rat>(static_cast<size_t>(d + 1), Rat(0)));
  for (int r = 0; r + 1 < d; ++r) {
    for (int c = 0; c < d; ++c) {
      a[r][c] = P[static_cast<size_t>(c)][static_cast<size_t>(r)];
      if (r == c) a[r][c] -= 1;
    }
  }
  for (int c = 0; c < d; ++c) a[static_cast<size_t>(d - 1)][static_cast<size_t>(c)] = 1;
  a[static_cast<size_t>(d - 1)][static_cast<size_t>(d)] = 1;

  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r) {
      if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw ValidationError("transition matrix is not irreducible");
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
    Rat lead = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int c = col; c <= d; ++c) a[static_cast<size_t>(col)][static_cast<size_t>(c)] /= lead;
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      Rat f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int c = col; c <= d; ++c) {
        a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
            f * a[static_cast<size_t>(col)][static_cast<size_t>(c)];
      }
    }
  }
  std::vector<Rat> pi(static_cast<size_t>(d));
  for (int s = 0; s < d; ++s) pi[static_cast<size_t>(s)] = a[static_cast<size_t>(s)][static_cast<size_t>(d)];
  return pi;
}

bool strongly_connected(const std::vector<std::vector<Rat>>& P) {
  const int d = static_cast<int>(P.size());
  auto reach = [&](bool transpose) {
    std::vector<bool> seen(static_cast<size_t>(d), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < d; ++v) {
        const Rat& w = transpose ? P[static_cast<size_t>(v)][static_cast<size_t>(u)]
                                 : P[static_cast<size_t>(u)][static_cast<size_t>(v)];
        if (w > 0 && !seen[static_cast<size_t>(v)]) {
          seen[static_cast<size_t>(v)] = true;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach(false) && reach(true);
}

using RatMat = std::vector<std::vector<Rat>>;

RatMat mat_mul(const RatMat& x, const RatMat& y) {
  const size_t d = x.size();
  RatMat out(d, std::vector<Rat>(d, Rat(0)));
  for (size_t i = 0; i < d; ++i) {
    for (size_t k = 0; k < d; ++k) {
      if (x[i][k] == 0) continue;
      for (size_t j = 0; j < d; ++j) {
        if (y[k][j] == 0) continue;
        out[i][j] += x[i][k] * y[k][j];
      }
    }
  }
  return out;
}

RatMat mat_pow(RatMat base, long n) {
  const size_t d = base.size();
  RatMat out(d, std::vector<Rat>(d, Rat(0)));
  for (size_t i = 0; i < d; ++i) out[i][i] = 1;
  while (n > 0) {
    if (n & 1) out = mat_mul(out, base);
    base = mat_mul(base, base);
    n >>= 1;
  }
  return out;
}

}  // namespace

MarkovMeasure::MarkovMeasure(std::vector<std::vector<Rat>> P) : P_(std::move(P)) {
  const int d = static_cast<int>(P_.size());
  if (d < 2) throw ValidationError("markov needs >= 2 states");
  for (auto& row : P_) {
    if (static_cast<int>(row.size()) != d) throw ValidationError("transition matrix must be square");
    Rat sum(0);
    for (auto& q : row) {
      q.canonicalize();  // callers may hand over raw num/den pairs
      if (q < 0) throw ValidationError("transition probabilities must be >= 0");
      sum += q;
    }
    if (sum != 1) throw ValidationError("transition rows must sum to 1");
  }
  if (!strongly_connected(P_)) throw ValidationError("transition matrix is not irreducible");
  pi_ = stationary_solve(P_);
  // Sanity on the exact solve; both can only fail on a logic error.
  Rat total(0);
  std::vector<Rat> piP(static_cast<size_t>(d), Rat(0));
  for (int s = 0; s < d; ++s) {
    if (pi_[static_cast<size_t>(s)] <= 0) throw ValidationError("stationary vector not strictly positive");
    total += pi_[static_cast<size_t>(s)];
    for (int t = 0; t < d; ++t) {
      piP[static_cast<size_t>(t)] +=
          pi_[static_cast<size_t>(s)] * P_[static_cast<size_t>(s)][static_cast<size_t>(t)];
    }
  }
  if (total != 1 || piP != pi_) throw ValidationError("stationary solve failed");
}

Rat MarkovMeasure::transition_power(long n, int a, int b) const {
  if (n < 0) throw ValidationError("negative matrix power");
  if (n == 0) return Rat(a == b ? 1 : 0);
  if (n == 1) return transition(a, b);
  RatMat pw = mat_pow(P_, n);
  return pw[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

// --- measure operations --------------------------------------------------

int alphabet_size(const MeasureModel& m) {
  return std::visit([](const auto& mm) { return mm.alphabet_size(); }, m);
}

Rat word_measure(const MeasureModel& m, const Word& w) {
  const int d = alphabet_size(m);
  if (!w.valid_for(Alphabet(d))) throw ValidationError("word uses symbols outside the alphabet");
  if (const auto* b = std::get_if<BernoulliMeasure>(&m)) {
    Rat out(1);
    for (int s : w.symbols) out *= b->p(s);
    return out;
  }
  const auto& mk = std::get<MarkovMeasure>(m);
  Rat out = mk.stationary(w.at(0));
  for (long j = 0; j + 1 < w.length(); ++j) out *= mk.transition(w.at(j), w.at(j + 1));
  return out;
}

Rat constraint_merge_measure(const MeasureModel& m, std::span<const Constraint> cs) {
  const int d = alphabet_size(m);
  if (cs.empty()) return Rat(1);
  std::map<long, int> pinned;
  for (const auto& c : cs) {
    if (!c.word.valid_for(Alphabet(d))) throw ValidationError("constraint word outside alphabet");
    for (long j = 0; j < c.word.length(); ++j) {
      auto [it, fresh] = pinned.try_emplace(c.offset + j, c.word.at(j));
      if (!fresh && it->second != c.word.at(j)) return Rat(0);  // contradictory pins
    }
  }
  if (const auto* b = std::get_if<BernoulliMeasure>(&m)) {
    Rat out(1);
    for (const auto& [pos, sym] : pinned) {
      (void)pos;
      out *= b->p(sym);
    }
    return out;
  }
  const auto& mk = std::get<MarkovMeasure>(m);
  auto it = pinned.begin();
  Rat out = mk.stationary(it->second);
  for (auto next = std::next(it); next != pinned.end(); it = next, ++next) {
    long gap = next->first - it->first;
    if (gap == 1) {
      out *= mk.transition(it->second, next->second);
    } else {
      out *= mk.transition_power(gap, it->second, next->second);
    }
    if (out == 0) return out;
  }
  return out;
}

Rat integral(const MeasureModel& m, const CylinderFunction& f) {
  Rat out(0);
  for (const auto& t : f.terms()) out += t.coeff * word_measure(m, t.indicator.word);
  return out;
}

}  // namespace ergolab
