#include "ergolab/mc.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ergolab/generators.hpp"

namespace ergolab {

namespace {

void validate_spec(const MeasureModel& m, const EstimatorSpec& spec,
                   const McOptions& opt) {
  if (!spec.word.valid_for(Alphabet(alphabet_size(m)))) {
    throw ValidationError("estimator word outside the alphabet");
  }
  if (spec.schedule.empty()) throw ValidationError("empty k schedule");
  for (size_t j = 0; j < spec.schedule.size(); ++j) {
    if (spec.schedule[j] < 1 ||
        (j > 0 && spec.schedule[j] <= spec.schedule[j - 1])) {
      throw ValidationError("k schedule must be strictly increasing and >= 1");
    }
  }
  if (opt.trials < 1) throw ValidationError("need at least one trial");
  if (!(opt.epsilon > 0)) throw ValidationError("epsilon must be > 0");
}

// Runs fn(t) for t in [0, trials) across threads; results land in
// caller-owned slots, so scheduling cannot reorder anything observable.
template <typename Fn>
void parallel_trials(int trials, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int t = w; t < trials; t += threads) fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

McRun run_common(const MeasureModel& m, const EstimatorSpec& spec,
                 const McOptions& opt, bool per_k) {
  validate_spec(m, spec, opt);
  McRun run;
  run.spec = spec;
  run.options = opt;
  run.target = word_measure(m, spec.word);
  run.trials.resize(static_cast<size_t>(opt.trials));

  const CylinderFunction f = CylinderFunction::indicator(spec.word);
  const Rat eps_rat(opt.epsilon);  // binary double, exact
  const long k_last = spec.schedule.back();

  parallel_trials(opt.trials, opt.threads, [&](int t) {
    TrialResult& res = run.trials[static_cast<size_t>(t)];
    res.seed = counter_hash(opt.master_seed, static_cast<std::uint64_t>(t), 0, 0);
    if (!per_k) {
      PointWindow x = random_window(m, k_last, res.seed);
      DiffSeries series = stdiff_series(m, x, spec.schedule, f);
      for (const auto& e : series.entries) res.values.emplace_back(e.k, *e.value);
    } else {
      for (long k : spec.schedule) {
        std::uint64_t ks = counter_hash(opt.master_seed, static_cast<std::uint64_t>(t),
                                        static_cast<std::uint64_t>(k), 0);
        PointWindow x = random_window(m, k, ks);
        res.values.emplace_back(k, stdiff_value(m, x, k, f));
      }
    }
    res.final_deviation = rat_abs(res.values.back().second - run.target);
  });

  int hits = 0;
  for (const auto& tr : run.trials) {
    if (tr.final_deviation < eps_rat) ++hits;
  }
  run.pass_fraction = static_cast<double>(hits) / static_cast<double>(opt.trials);
  return run;
}

}  // namespace

McRun run_fixed_center(const MeasureModel& m, const EstimatorSpec& spec,
                       const McOptions& options) {
  if (spec.centers != CenterMode::FixedPoint) {
    throw ValidationError("spec asks for per-k centers; use run_random_centers");
  }
  return run_common(m, spec, options, false);
}

McRun run_random_centers(const MeasureModel& m, const EstimatorSpec& spec,
                         const McOptions& options) {
  if (spec.centers != CenterMode::PerK) {
    throw ValidationError("spec asks for a fixed center; use run_fixed_center");
  }
  return run_common(m, spec, options, true);
}

// --- brute-force oracles ---------------------------------------------------

namespace {

void guard_enumeration(int d, long k) {
  if (k < 1) throw ValidationError("k must be >= 1");
  double states = std::pow(static_cast<double>(d), static_cast<double>(k));
  if (states > 1e7) {
    throw ComplexityGuard("d^k exceeds the 10^7 enumeration budget");
  }
}

// Depth-first sweep over all windows, carrying the running product weight.
template <typename Leaf>
void for_each_window(const BernoulliMeasure& m, long k, Leaf&& leaf) {
  const int d = m.alphabet_size();
  std::vector<int> syms(static_cast<size_t>(k), 0);
  std::vector<Rat> weight(static_cast<size_t>(k) + 1, Rat(1));
  long pos = 0;
  while (true) {
    if (pos == k) {
      leaf(syms, weight[static_cast<size_t>(k)]);
      --pos;
      while (pos >= 0 && syms[static_cast<size_t>(pos)] == d - 1) {
        syms[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) return;
      ++syms[static_cast<size_t>(pos)];
    }
    weight[static_cast<size_t>(pos) + 1] =
        weight[static_cast<size_t>(pos)] * m.p(syms[static_cast<size_t>(pos)]);
    ++pos;
  }
}

}  // namespace

Rat xi_mean_bruteforce(const BernoulliMeasure& m, long k, long i, const Word& a) {
  guard_enumeration(m.alphabet_size(), k);
  if (i < 0 || i >= k) throw ValidationError("shift index outside [0, k)");
  if (!a.valid_for(Alphabet(m.alphabet_size()))) {
    throw ValidationError("word outside the alphabet");
  }
  MeasureModel model = m;
  ShiftedCylinderIndicator ind(0, a);
  Rat acc(0);
  for_each_window(m, k, [&](const std::vector<int>& syms, const Rat& w) {
    PointWindow x(0, syms, "enum");
    acc += w * conditional_average(model, x, k, i, ind);
  });
  return acc;
}

Rat xi_covariance_bruteforce(const BernoulliMeasure& m, long k, long i, long j,
                             const Word& a) {
  guard_enumeration(m.alphabet_size(), k);
  if (i < 0 || i >= k || j < 0 || j >= k) {
    throw ValidationError("shift index outside [0, k)");
  }
  MeasureModel model = m;
  ShiftedCylinderIndicator ind(0, a);
  Rat mean_i(0), mean_j(0), mean_ij(0);
  for_each_window(m, k, [&](const std::vector<int>& syms, const Rat& w) {
    PointWindow x(0, syms, "enum");
    Rat xi = conditional_average(model, x, k, i, ind);
    Rat xj = conditional_average(model, x, k, j, ind);
    mean_i += w * xi;
    mean_j += w * xj;
    mean_ij += w * xi * xj;
  });
  return mean_ij - mean_i * mean_j;
}

SplitIndices split_subsequences(long k, long ell) {
  if (k < 1 || ell < 1) throw ValidationError("k and block length must be >= 1");
  SplitIndices out;
  out.classes.assign(static_cast<size_t>(ell), {});
  const long cut = ell * (k / ell);
  for (long i = 0; i < cut; ++i) {
    out.classes[static_cast<size_t>(i % ell)].push_back(i);
  }
  for (long i = cut; i < k; ++i) out.remainder.push_back(i);
  return out;
}

}  // namespace ergolab
