#include "ergolab/generators.hpp"

#include <algorithm>
#include <set>

namespace ergolab {

long BlockSchedule::boundary(int n) {
  if (n < 0 || n > 61) throw ValidationError("block index out of range");
  return (2L << n) - 2;  // 2^{n+1} - 2
}

int BlockSchedule::block_of(long j) {
  if (j < 1) throw ValidationError("block_of needs j >= 1");
  int n = 1;
  while (boundary(n) < j) ++n;
  return n;
}

int pathological_symbol(long j) {
  if (j < 0) return 0;
  if (j == 0) return 1;
  return 1 - BlockSchedule::block_of(j) % 2;  // even blocks carry 1s
}

PointWindow pathological_point(long lo, long hi) {
  if (lo >= hi) throw ValidationError("empty range");
  std::vector<int> syms;
  syms.reserve(static_cast<size_t>(hi - lo));
  for (long j = lo; j < hi; ++j) syms.push_back(pathological_symbol(j));
  return PointWindow(lo, std::move(syms), "pathological");
}

std::pair<long, Rat> checkpoint_values(int n, CheckpointParity parity) {
  if (n < 1) throw ValidationError("checkpoint index must be >= 1");
  mpz_class four_n;
  mpz_ui_pow_ui(four_n.get_mpz_t(), 4, static_cast<unsigned long>(n));
  if (parity == CheckpointParity::Even) {
    long k = BlockSchedule::boundary(2 * n) + 1;
    // (1/3)(4^n - 1)/(4^n - 1/2) = 2(4^n - 1) / (3(2*4^n - 1))
    Rat value(2 * (four_n - 1), 3 * (2 * four_n - 1));
    value.canonicalize();
    return {k, value};
  }
  long k = BlockSchedule::boundary(2 * n - 1) + 1;
  return {k, Rat(2, 3)};
}

// --- counter RNG ----------------------------------------------------------

namespace {

std::uint64_t splitmix_round(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c) {
  const std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t h = splitmix_round(seed + golden);
  h = splitmix_round(h ^ (a + golden));
  h = splitmix_round(h ^ (b + golden));
  h = splitmix_round(h ^ (c + golden));
  return h;
}

SymbolSampler::SymbolSampler(const std::vector<Rat>& pmf) {
  if (pmf.size() < 2) throw ValidationError("pmf needs >= 2 entries");
  std::vector<Rat> probs = pmf;
  for (auto& p : probs) p.canonicalize();  // callers may hand over raw num/den pairs
  mpz_class two64 = mpz_class(1) << 64;
  Rat cum(0);
  last_positive_ = -1;
  for (size_t s = 0; s < probs.size(); ++s) {
    const Rat& p = probs[s];
    if (p < 0) throw ValidationError("negative pmf entry");
    if (p > 0) last_positive_ = static_cast<int>(s);
    cum += p;
    mpz_class cut = (cum.get_num() * two64) / cum.get_den();  // floor(cum * 2^64)
    if (cut > two64) throw ValidationError("pmf exceeds 1");
    mpz_class capped = cut == two64 ? two64 - 1 : cut;
    cuts_.push_back(mpz_get_ui(capped.get_mpz_t()));
  }
  if (cum != 1) throw ValidationError("pmf must sum to 1");
  cuts_.back() = ~0ULL;  // last bucket absorbs the rounding slack
}

int SymbolSampler::draw(std::uint64_t r) const {
  for (size_t s = 0; s + 1 < cuts_.size(); ++s) {
    if (r < cuts_[s]) return static_cast<int>(s);
  }
  // The slack bucket must never emit a zero-mass symbol.
  return std::min(static_cast<int>(cuts_.size()) - 1, last_positive_);
}

PointWindow random_window(const MeasureModel& m, long k, std::uint64_t seed) {
  if (k < 1) throw ValidationError("window length must be >= 1");
  std::vector<int> syms;
  syms.reserve(static_cast<size_t>(k));
  if (const auto* b = std::get_if<BernoulliMeasure>(&m)) {
    SymbolSampler sampler(b->probs());
    for (long j = 0; j < k; ++j) {
      syms.push_back(sampler.draw(counter_hash(seed, static_cast<std::uint64_t>(j), 0, 0)));
    }
  } else {
    const auto& mk = std::get<MarkovMeasure>(m);
    SymbolSampler init(mk.stationary_vector());
    std::vector<SymbolSampler> rows;
    for (int s = 0; s < mk.alphabet_size(); ++s) {
      rows.emplace_back(mk.matrix()[static_cast<size_t>(s)]);
    }
    int cur = init.draw(counter_hash(seed, 0, 0, 0));
    syms.push_back(cur);
    for (long j = 1; j < k; ++j) {
      cur = rows[static_cast<size_t>(cur)].draw(
          counter_hash(seed, static_cast<std::uint64_t>(j), 0, 0));
      syms.push_back(cur);
    }
  }
  return PointWindow(0, std::move(syms), "random:seed=" + std::to_string(seed));
}

PointWindow perturb(const PointWindow& x, const std::vector<Edit>& edits,
                    const Alphabet& alphabet) {
  PointWindow out = x;
  std::set<long> touched;
  for (const auto& e : edits) {
    if (e.index < x.lo || e.index >= x.hi) {
      throw ValidationError("edit index outside the window");
    }
    if (!alphabet.contains(e.symbol)) throw ValidationError("edit symbol outside the alphabet");
    if (!touched.insert(e.index).second) throw ValidationError("duplicate edit index");
    out.symbols[static_cast<size_t>(e.index - x.lo)] = e.symbol;
  }
  out.provenance = x.provenance + "+edits=" + std::to_string(edits.size());
  return out;
}

}  // namespace ergolab
