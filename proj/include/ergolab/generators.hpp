#pragma once

#include <cstdint>
#include <utility>

#include "ergolab/measure.hpp"

namespace ergolab {

// Doubling block layout: boundary(n) = 2^{n+1} - 2, so block n (1-indexed)
// spans (boundary(n-1), boundary(n)] and has length 2^n.
struct BlockSchedule {
  static long boundary(int n);  // n in [0, 61]

  // Index of the block containing position j >= 1.
  static int block_of(long j);
};

// The two-sided sequence that alternates ever-longer blocks of 0s and 1s:
// 0 on the negative axis, x_0 = 1, then block n (length 2^n) filled with 0
// for n odd and 1 for n even. Its zero-letter averages oscillate forever
// between neighborhoods of 1/3 and 2/3, so the k-average has no limit.
PointWindow pathological_point(long lo, long hi);

int pathological_symbol(long j);

// Closed forms for the zero-letter average of pathological_point at the two
// checkpoint families (n >= 1):
//   even: k = boundary(2n) + 1, value = (1/3) * (4^n - 1) / (4^n - 1/2)
//   odd:  k = boundary(2n-1) + 1, value = 2/3
enum class CheckpointParity { Even, Odd };
std::pair<long, Rat> checkpoint_values(int n, CheckpointParity parity);

// Deterministic sample of mu restricted to [0, k): same (m, k, seed) gives
// the same window on every platform. Symbols come from 64-bit counter
// hashes compared against exact cumulative thresholds.
PointWindow random_window(const MeasureModel& m, long k, std::uint64_t seed);

struct Edit {
  long index = 0;
  int symbol = 0;
};

// Copy of x with finitely many symbols replaced. Provenance gains the edit
// count; edits must hit distinct in-window indices.
PointWindow perturb(const PointWindow& x, const std::vector<Edit>& edits,
                    const Alphabet& alphabet);

// --- counter RNG ----------------------------------------------------------

// Stateless SplitMix64-style mixer. Streams are identified purely by their
// key words, so any evaluation order (or thread schedule) sees the same
// numbers.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c);

// floor(cum * 2^64) thresholds for a rational pmf; draw(r) is the symbol
// whose threshold bracket contains r.
class SymbolSampler {
 public:
  explicit SymbolSampler(const std::vector<Rat>& pmf);
  int draw(std::uint64_t r) const;

 private:
  std::vector<std::uint64_t> cuts_;  // ascending, last = 2^64 - 1 sentinel
  int last_positive_ = -1;           // slack draws must stay in the support
};

}  // namespace ergolab
