#pragma once

#include <cstdint>

#include "ergolab/stdiff.hpp"

namespace ergolab {

// Where the conditioning cylinders come from: one sampled point reused for
// every time scale, or a fresh sample per scale (centers drawn from the
// product of countably many copies of the system).
enum class CenterMode { FixedPoint, PerK };

struct EstimatorSpec {
  Word word;                   // estimate mu([word])
  CenterMode centers = CenterMode::FixedPoint;
  std::vector<long> schedule;  // time scales, strictly increasing

  // Any increasing integer schedule keeps sum k^-2 finite, which is what
  // the almost-sure convergence argument needs; validated on use.
};

struct TrialResult {
  std::uint64_t seed = 0;  // per-trial stream seed
  std::vector<std::pair<long, Rat>> values;
  Rat final_deviation;     // |last value - mu([word])|, exact
};

struct McOptions {
  std::uint64_t master_seed = 0;
  int trials = 1;
  double epsilon = 0.05;  // acceptance band around the integral
  int threads = 1;
};

struct McRun {
  EstimatorSpec spec;
  McOptions options;
  Rat target;  // mu([word])
  std::vector<TrialResult> trials;
  double pass_fraction = 0.0;  // trials with final deviation < epsilon
};

// Both runners are bit-deterministic in (m, spec, options.master_seed):
// trial t draws window data from counter streams derived from
// (master_seed, t, k-slot, position), so the thread schedule cannot change
// any output. FixedPoint uses k-slot 0; PerK keys each scale separately.
McRun run_fixed_center(const MeasureModel& m, const EstimatorSpec& spec,
                       const McOptions& options);
McRun run_random_centers(const MeasureModel& m, const EstimatorSpec& spec,
                         const McOptions& options);

// Exact mean over all length-k windows of the conditional average of the
// word indicator at shift i: enumerates the d^k windows with their product
// weights. Guards at 10^7 windows (ComplexityGuard).
Rat xi_mean_bruteforce(const BernoulliMeasure& m, long k, long i, const Word& a);

// Exact covariance of the shift-i and shift-j conditional averages over the
// same enumeration. Vanishes whenever |i - j| >= len(a), which is what
// makes the arithmetic-progression splitting below work.
Rat xi_covariance_bruteforce(const BernoulliMeasure& m, long k, long i, long j,
                             const Word& a);

// Indices [0, k) split into ell arithmetic progressions of step ell (full
// blocks only) plus the ragged tail.
struct SplitIndices {
  std::vector<std::vector<long>> classes;
  std::vector<long> remainder;
};

SplitIndices split_subsequences(long k, long ell);

}  // namespace ergolab
