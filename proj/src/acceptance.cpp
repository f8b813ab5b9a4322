#include "ergolab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "ergolab/ergodic_opt.hpp"
#include "ergolab/generators.hpp"
#include "ergolab/mc.hpp"
#include "ergolab/rotation.hpp"
#include "ergolab/stdiff.hpp"

namespace ergolab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Small positive rational with 1..9 weights, driven by a counter stream.
std::vector<Rat> random_pmf(std::uint64_t seed, std::uint64_t tag, int d) {
  std::vector<Rat> w(static_cast<size_t>(d));
  Rat total(0);
  for (int s = 0; s < d; ++s) {
    std::uint64_t h = counter_hash(seed, tag, static_cast<std::uint64_t>(s), 11);
    w[static_cast<size_t>(s)] = Rat(1 + static_cast<long>(h % 9));
    total += w[static_cast<size_t>(s)];
  }
  for (auto& q : w) q /= total;
  return w;
}

MeasureModel random_measure(std::uint64_t seed, std::uint64_t tag, int d, bool markov) {
  if (!markov) return BernoulliMeasure(random_pmf(seed, tag, d));
  std::vector<std::vector<Rat>> rows;
  for (int r = 0; r < d; ++r) {
    rows.push_back(random_pmf(seed, tag * 131 + static_cast<std::uint64_t>(r) + 1, d));
  }
  return MarkovMeasure(std::move(rows));
}

// Adaptive Simpson, used as the independent quadrature oracle.
double simpson_slice(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double eps,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson_slice(a, m, fa, flm, fm);
  const double right = simpson_slice(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps = 1e-13) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson_slice(a, b, fa, fm, fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 48);
}

struct Check {
  bool ok = true;
  long cases = 0;
  std::string first_failure;

  void expect(bool cond, const std::function<std::string()>& describe) {
    ++cases;
    if (!cond && ok) {
      ok = false;
      first_failure = describe();
    }
  }
};

// --- criterion 1 -----------------------------------------------------------
// Conditioning the k-step Birkhoff average of a one-letter indicator on the
// rank-k cylinder returns exactly the letter frequency of the window.

CriterionResult criterion_1() {
  CriterionResult r{1, "letter averages: cylinder conditioning equals empirical frequency", false, "", 0};
  const auto start = Clock::now();
  const std::uint64_t seed = 0xAC01;
  Check chk;
  for (int t = 0; t < 1000; ++t) {
    const std::uint64_t tag = static_cast<std::uint64_t>(t);
    const int d = 2 + static_cast<int>(counter_hash(seed, tag, 1, 0) % 3);
    const long k = 1 + static_cast<long>(counter_hash(seed, tag, 2, 0) % 12);
    MeasureModel m = random_measure(seed, tag, d, t % 4 == 3);
    PointWindow x = random_window(m, k, counter_hash(seed, tag, 3, 0));
    const int letter = static_cast<int>(counter_hash(seed, tag, 4, 0) % static_cast<std::uint64_t>(d));
    Rat lhs = stdiff_value(m, x, k, CylinderFunction::indicator(Word({letter})));
    Rat rhs = frequency(x, Word({letter}), k, FrequencyCap::ToKMinusOne);
    chk.expect(lhs == rhs, [&] {
      return "instance " + std::to_string(t) + ": " + rat_str(lhs) + " != " + rat_str(rhs);
    });
  }
  r.seconds = seconds_since(start);
  r.passed = chk.ok && r.seconds < 5.0;
  r.detail = chk.ok ? std::to_string(chk.cases) + " instances exact" : chk.first_failure;
  if (chk.ok && r.seconds >= 5.0) r.detail += " (over 5 s budget)";
  return r;
}

// --- criterion 2 -----------------------------------------------------------
// The alternating-block point reproduces its closed-form averaging
// checkpoints exactly, and the two checkpoint families stay separated.

CriterionResult criterion_2() {
  CriterionResult r{2, "alternating-block point: checkpoint averages match closed forms", false, "", 0};
  const auto start = Clock::now();
  struct Cp {
    int n;
    CheckpointParity parity;
    long k;
    Rat closed;
  };
  std::vector<Cp> cps;
  for (int n = 1; n <= 10; ++n) {
    auto [ko, vo] = checkpoint_values(n, CheckpointParity::Odd);
    auto [ke, ve] = checkpoint_values(n, CheckpointParity::Even);
    cps.push_back({n, CheckpointParity::Odd, ko, vo});
    cps.push_back({n, CheckpointParity::Even, ke, ve});
  }
  std::vector<long> ks;
  for (const auto& c : cps) ks.push_back(c.k);  // odd_n < even_n < odd_{n+1} already

  MeasureModel m = BernoulliMeasure({Rat(1, 2), Rat(1, 2)});
  PointWindow x = pathological_point(0, ks.back());
  DiffSeries series = stdiff_series(m, x, ks, CylinderFunction::indicator(Word({0})));

  Check chk;
  for (size_t i = 0; i < cps.size(); ++i) {
    const Rat& got = *series.entries[i].value;
    chk.expect(got == cps[i].closed, [&] {
      return "n=" + std::to_string(cps[i].n) + " k=" + std::to_string(cps[i].k) + ": " +
             rat_str(got) + " != " + rat_str(cps[i].closed);
    });
    if (cps[i].parity == CheckpointParity::Even) {
      chk.expect(got < Rat(1, 3), [&] { return "even checkpoint not below 1/3"; });
      if (cps[i].n == 10) {
        chk.expect(rat_abs(got - Rat(1, 3)) < Rat(1, 1000),
                   [&] { return "n=10 even checkpoint misses 1/3 by >= 1e-3"; });
      }
    } else {
      chk.expect(got == Rat(2, 3), [&] { return "odd checkpoint != 2/3"; });
    }
  }
  r.seconds = seconds_since(start);
  r.passed = chk.ok && r.seconds < 10.0;
  r.detail = chk.ok ? "20 checkpoints exact, lim inf side < 1/3 < 2/3 = lim sup side"
                    : chk.first_failure;
  if (chk.ok && r.seconds >= 10.0) r.detail += " (over 10 s budget)";
  return r;
}

// --- criterion 3 -----------------------------------------------------------
// Enumerated mean of the conditional averages equals the word measure for
// every shift index: the estimator is unbiased at every k.

CriterionResult criterion_3() {
  CriterionResult r{3, "window-mean oracle: conditional averages integrate to the word measure", false, "", 0};
  const auto start = Clock::now();
  const std::vector<std::vector<Rat>> vectors = {
      {Rat(1, 2), Rat(1, 2)}, {Rat(1, 3), Rat(2, 3)}, {Rat(1, 4), Rat(3, 4)},
      {Rat(2, 5), Rat(3, 5)}, {Rat(1, 10), Rat(9, 10)}};
  Check chk;
  for (const auto& p : vectors) {
    BernoulliMeasure m(p);
    MeasureModel model = m;
    for (long len = 1; len <= 3; ++len) {
      std::vector<int> digits(static_cast<size_t>(len), 0);
      while (true) {
        Word a(digits);
        const Rat target = word_measure(model, a);
        for (long k = 1; k <= 10; ++k) {
          for (long i = 0; i < k; ++i) {
            Rat mean = xi_mean_bruteforce(m, k, i, a);
            chk.expect(mean == target, [&] {
              return "k=" + std::to_string(k) + " i=" + std::to_string(i) + ": " +
                     rat_str(mean) + " != " + rat_str(target);
            });
          }
        }
        long pos = len - 1;
        while (pos >= 0 && digits[static_cast<size_t>(pos)] == 1) digits[static_cast<size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++digits[static_cast<size_t>(pos)];
      }
    }
  }
  r.seconds = seconds_since(start);
  r.passed = chk.ok && r.seconds < 60.0;
  r.detail = chk.ok ? std::to_string(chk.cases) + " (vector, word, k, i) cases exact"
                    : chk.first_failure;
  if (chk.ok && r.seconds >= 60.0) r.detail += " (over 60 s budget)";
  return r;
}

// --- criterion 4 -----------------------------------------------------------
// The two frequency caps can disagree only on the last len-1 shifts:
// |freq_{k-1} - freq_{k-len}| <= (len-1)/k, always, exactly.

CriterionResult criterion_4() {
  CriterionResult r{4, "frequency caps differ by at most (len-1)/k", false, "", 0};
  const auto start = Clock::now();
  const std::uint64_t seed = 0xAC04;
  Check chk;
  for (int t = 0; t < 10000; ++t) {
    const std::uint64_t tag = static_cast<std::uint64_t>(t);
    const long len = 1 + static_cast<long>(counter_hash(seed, tag, 1, 0) % 4);
    const long k = len + static_cast<long>(counter_hash(seed, tag, 2, 0) %
                                           static_cast<std::uint64_t>(1001 - len));
    MeasureModel m = random_measure(seed, tag, 2, false);
    PointWindow x = random_window(m, k + len - 1, counter_hash(seed, tag, 3, 0));
    std::vector<int> syms;
    for (long j = 0; j < len; ++j) {
      syms.push_back(static_cast<int>(counter_hash(seed, tag, 4, static_cast<std::uint64_t>(j)) % 2));
    }
    Word a(syms);
    Rat f3 = frequency(x, a, k, FrequencyCap::ToKMinusL);
    Rat f4 = frequency(x, a, k, FrequencyCap::ToKMinusOne);
    chk.expect(rat_abs(f4 - f3) <= rat_frac(len - 1, k), [&] {
      return "instance " + std::to_string(t) + ": gap " + rat_str(rat_abs(f4 - f3)) +
             " exceeds " + rat_str(rat_frac(len - 1, k));
    });
  }
  r.seconds = seconds_since(start);
  r.passed = chk.ok && r.seconds < 60.0;
  r.detail = chk.ok ? "10000 instances, zero violations" : chk.first_failure;
  return r;
}

// --- criterion 5 -----------------------------------------------------------
// Golden-mean subshift, counting the 1s: the cycle bound is exactly 1/2,
// finite horizons sandwich it from above and converge, and the horizon
// sums are subadditive.

CriterionResult criterion_5() {
  CriterionResult r{5, "golden-mean gauge sandwich and subadditivity", false, "", 0};
  const auto start = Clock::now();
  Sft gm(2, {{true, true}, {true, false}});
  CylinderFunction f = CylinderFunction::indicator(Word({1}));

  auto g = build_transition_graph(gm, f);
  MaxMeanCycle mmc = max_mean_cycle(g);
  Check chk;
  chk.expect(mmc.value == Rat(1, 2), [&] { return "cycle max " + rat_str(mmc.value) + " != 1/2"; });
  // Witness re-check: node sums around the reported cycle give its mean.
  {
    Rat sum(0);
    for (int v : mmc.cycle) sum += g.node_value(v);
    chk.expect(!mmc.cycle.empty() && sum / static_cast<long>(mmc.cycle.size()) == mmc.value,
               [&] { return "witness cycle mean disagrees with reported value"; });
  }

  std::vector<long> ks;
  for (long k = 1; k <= 500; ++k) ks.push_back(k);
  GaugeSeries series = gauge_series(gm, f, ks);
  for (const auto& e : series.entries) {
    chk.expect(e.value == rat_frac((e.k + 1) / 2, e.k), [&] {
      return "Gamma_" + std::to_string(e.k) + " = " + rat_str(e.value) + " != ceil(k/2)/k";
    });
    chk.expect(e.value >= mmc.value, [&] {
      return "Gamma_" + std::to_string(e.k) + " fell below the cycle bound";
    });
  }
  chk.expect(series.entries.back().value - Rat(1, 2) < Rat(1, 50),
             [&] { return "Gamma_500 not within 0.02 of 1/2"; });
  // Subadditivity of the unnormalized horizon sums.
  for (long a = 1; a <= 40; ++a) {
    for (long b = 1; b <= 40; ++b) {
      const Rat& ga = series.entries[static_cast<size_t>(a - 1)].value;
      const Rat& gb = series.entries[static_cast<size_t>(b - 1)].value;
      const Rat& gab = series.entries[static_cast<size_t>(a + b - 1)].value;
      chk.expect((a + b) * gab <= a * ga + b * gb, [&] {
        return "subadditivity fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
      });
    }
  }
  r.seconds = seconds_since(start);
  r.passed = chk.ok && r.seconds < 30.0;
  r.detail = chk.ok ? "cycle max 1/2 exact; Gamma_k = ceil(k/2)/k for k <= 500; 1600 subadditivity pairs"
                    : chk.first_failure;
  if (chk.ok && r.seconds >= 30.0) r.detail += " (over 30 s budget)";
  return r;
}

// --- criterion 6 -----------------------------------------------------------
// Full binary shift, counting the 0s: every horizon maxes out at 1 (the
// all-zero word), and against the fair-coin measure the gap is exactly 1/2.

CriterionResult criterion_6() {
  CriterionResult r{6, "full-shift gauge is flat and the gap is exact", false, "", 0};
  const auto start = Clock::now();
  Sft full = Sft::full_shift(2);
  CylinderFunction f = CylinderFunction::indicator(Word({0}));
  MeasureModel m = BernoulliMeasure({Rat(1, 2), Rat(1, 2)});

  Check chk;
  std::vector<long> ks;
  for (long k = 1; k <= 300; ++k) ks.push_back(k);
  GaugeSeries series = gauge_series(full, f, ks);
  for (const auto& e : series.entries) {
    chk.expect(e.value == 1, [&] {
      return "Gamma_" + std::to_string(e.k) + " = " + rat_str(e.value) + " != 1";
    });
  }
  GapReport rep = gauge_gap(m, full, f, 300);
  chk.expect(rep.mmc_value == 1, [&] { return "cycle max != 1"; });
  chk.expect(rep.mu_integral == Rat(1, 2), [&] { return "integral != 1/2"; });
  chk.expect(rep.gap == Rat(1, 2), [&] { return "gap " + rat_str(rep.gap) + " != 1/2"; });
  chk.expect(rep.certified_not_uniquely_ergodic, [&] { return "positive gap not flagged"; });
  chk.expect(rep.witness.cycle == std::vector<int>{0},
             [&] { return "witness is not the self-loop at the 0 window"; });
  r.seconds = seconds_since(start);
  r.passed = chk.ok && r.seconds < 30.0;
  r.detail = chk.ok ? "Gamma_k = 1 for k <= 300; gap = 1/2 exact; witness self-loop at 0"
                    : chk.first_failure;
  return r;
}

// --- criterion 7 -----------------------------------------------------------
// Fixed sampled centers at k = 10^4: at least 95% of 200 pinned-seed trials
// land within 0.02 of the target 1/2.

CriterionResult criterion_7(int threads) {
  CriterionResult r{7, "fixed-center sampling concentrates at the word measure", false, "", 0};
  const auto start = Clock::now();
  MeasureModel m = BernoulliMeasure({Rat(1, 2), Rat(1, 2)});
  EstimatorSpec spec;
  spec.word = Word({0});
  spec.centers = CenterMode::FixedPoint;
  spec.schedule = {10000};
  McOptions opt;
  opt.master_seed = 424242;
  opt.trials = 200;
  opt.epsilon = 0.02;
  opt.threads = threads;
  McRun run = run_fixed_center(m, spec, opt);
  r.seconds = seconds_since(start);
  r.passed = run.pass_fraction >= 0.95 && r.seconds < 60.0;
  std::ostringstream os;
  os << "pass fraction " << run.pass_fraction << " (target >= 0.95, eps 0.02, k 10^4)";
  r.detail = os.str();
  if (r.seconds >= 60.0) r.detail += " (over 60 s budget)";
  return r;
}

// --- criterion 8 -----------------------------------------------------------
// Fresh centers per scale, schedule k = 1..1000: at least 95% of 200
// pinned-seed trials end within 0.05 of the target.

CriterionResult criterion_8(int threads) {
  CriterionResult r{8, "re-sampled centers concentrate along the schedule", false, "", 0};
  const auto start = Clock::now();
  MeasureModel m = BernoulliMeasure({Rat(1, 2), Rat(1, 2)});
  EstimatorSpec spec;
  spec.word = Word({0});
  spec.centers = CenterMode::PerK;
  for (long k = 1; k <= 1000; ++k) spec.schedule.push_back(k);
  McOptions opt;
  opt.master_seed = 777;
  opt.trials = 200;
  opt.epsilon = 0.05;
  opt.threads = threads;
  McRun run = run_random_centers(m, spec, opt);
  r.seconds = seconds_since(start);
  r.passed = run.pass_fraction >= 0.95 && r.seconds < 60.0;
  std::ostringstream os;
  os << "pass fraction " << run.pass_fraction << " (target >= 0.95, eps 0.05, final k 10^3)";
  r.detail = os.str();
  if (r.seconds >= 60.0) r.detail += " (over 60 s budget)";
  return r;
}

// --- criterion 9 -----------------------------------------------------------
// Golden rotation with 1/k balls flattens cos(2 pi x) at k = 10^4, while the
// identity map keeps ball averages at 1/(2k), far from the spatial integral.

CriterionResult criterion_9() {
  CriterionResult r{9, "rotation ball averages track the integral; identity map defeats them", false, "", 0};
  const auto start = Clock::now();
  RotationSystem sys;
  sys.theta = (std::sqrt(5.0) - 1.0) / 2.0;
  sys.radii = {1.0, 1.0};
  TrigPolynomial f;
  f.terms.push_back({1, 1.0, 0.0});

  Check chk;
  const long k = 10000;
  for (int c = 0; c < 20; ++c) {
    double center = std::ldexp(
        static_cast<double>(counter_hash(0xAC09, static_cast<std::uint64_t>(c), 0, 0) >> 11), -53);
    double v = rotation_ball_stdiff(sys, center, k, f);
    chk.expect(std::abs(v) < 0.05, [&] {
      return "center " + std::to_string(center) + ": |" + std::to_string(v) + "| >= 0.05";
    });
  }

  const struct {
    double x0;
    long kk;
  } cases[] = {{0.3, 10}, {0.5, 100}, {0.7, 1000}};
  for (const auto& cs : cases) {
    IdentityCounterexample ce = identity_counterexample(cs.x0, cs.kk);
    const double rr = 1.0 / static_cast<double>(cs.kk);
    chk.expect(ce.ball_average == 1.0 / (2.0 * static_cast<double>(cs.kk)),
               [&] { return "ball average is not 1/(2k)"; });
    chk.expect(ce.integral == (cs.x0 * cs.x0 + (1.0 - cs.x0) * (1.0 - cs.x0)) / 2.0,
               [&] { return "integral misses its closed form"; });
    chk.expect(ce.ball_average * static_cast<double>(cs.kk) <= 1.0,
               [&] { return "ball average exceeds 1/k"; });
    // Independent quadrature of |y - x0|, split at the kink.
    auto absdev = [&](double y) { return std::abs(y - cs.x0); };
    double ball_quad = (integrate(absdev, cs.x0 - rr, cs.x0) + integrate(absdev, cs.x0, cs.x0 + rr)) / (2.0 * rr);
    double int_quad = integrate(absdev, 0.0, cs.x0) + integrate(absdev, cs.x0, 1.0);
    chk.expect(std::abs(ball_quad - ce.ball_average) < 1e-9,
               [&] { return "quadrature disagrees with the ball average"; });
    chk.expect(std::abs(int_quad - ce.integral) < 1e-9,
               [&] { return "quadrature disagrees with the integral"; });
  }
  r.seconds = seconds_since(start);
  r.passed = chk.ok && r.seconds < 30.0;
  r.detail = chk.ok ? "20 rotation centers within 0.05; identity closed forms exact + quadrature"
                    : chk.first_failure;
  return r;
}

// --- criterion 10 ----------------------------------------------------------
// Conditional averages at shifts separated by at least the word length are
// exactly uncorrelated under the enumerated distribution.

CriterionResult criterion_10() {
  CriterionResult r{10, "conditional averages decorrelate beyond the word length", false, "", 0};
  const auto start = Clock::now();
  const std::vector<std::vector<Rat>> vectors = {{Rat(1, 2), Rat(1, 2)},
                                                 {Rat(1, 3), Rat(2, 3)}};
  Check chk;
  for (const auto& p : vectors) {
    BernoulliMeasure m(p);
    for (long k = 1; k <= 8; ++k) {
      for (long len = 1; len <= 3; ++len) {
        std::vector<int> digits(static_cast<size_t>(len), 0);
        while (true) {
          Word a(digits);
          for (long i = 0; i < k; ++i) {
            for (long j = i + len; j < k; ++j) {
              Rat cov = xi_covariance_bruteforce(m, k, i, j, a);
              chk.expect(cov == 0, [&] {
                return "k=" + std::to_string(k) + " i=" + std::to_string(i) + " j=" +
                       std::to_string(j) + " len=" + std::to_string(len) + ": cov " + rat_str(cov);
              });
            }
          }
          long pos = len - 1;
          while (pos >= 0 && digits[static_cast<size_t>(pos)] == 1) digits[static_cast<size_t>(pos--)] = 0;
          if (pos < 0) break;
          ++digits[static_cast<size_t>(pos)];
        }
      }
    }
  }
  r.seconds = seconds_since(start);
  r.passed = chk.ok && r.seconds < 60.0;
  r.detail = chk.ok ? std::to_string(chk.cases) + " covariances, all exactly zero"
                    : chk.first_failure;
  return r;
}

}  // namespace

std::optional<Suite> parse_suite(const std::string& name) {
  if (name == "exact") return Suite::Exact;
  if (name == "montecarlo") return Suite::MonteCarlo;
  if (name == "all") return Suite::All;
  return std::nullopt;
}

std::vector<CriterionResult> run_acceptance(Suite suite, int threads) {
  const bool exact = suite != Suite::MonteCarlo;
  const bool mc = suite != Suite::Exact;
  std::vector<CriterionResult> out;
  if (exact) out.push_back(criterion_1());
  if (exact) out.push_back(criterion_2());
  if (exact) out.push_back(criterion_3());
  if (exact) out.push_back(criterion_4());
  if (exact) out.push_back(criterion_5());
  if (exact) out.push_back(criterion_6());
  if (mc) out.push_back(criterion_7(threads));
  if (mc) out.push_back(criterion_8(threads));
  if (mc) out.push_back(criterion_9());
  if (exact) out.push_back(criterion_10());
  return out;
}

std::string format_criterion(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof(head), "criterion %2d %s [%6.2fs] ", r.id,
                r.passed ? "PASS" : "FAIL", r.seconds);
  return std::string(head) + r.name + " -- " + r.detail;
}

bool all_passed(const std::vector<CriterionResult>& rs) {
  for (const auto& r : rs) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace ergolab
