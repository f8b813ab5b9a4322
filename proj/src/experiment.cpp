#include "ergolab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ergolab/generators.hpp"
#include "ergolab/rotation.hpp"

namespace ergolab {

namespace fs = std::filesystem;

namespace {

// --- small config readers -------------------------------------------------

[[noreturn]] void bad(const std::string& what) { throw ValidationError(what); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing config key \"") + key + "\"");
  return j[key];
}

long need_long(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return v.get<long>();
}

long opt_long(const Json& j, const char* key, long dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  if (!j[key].is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return j[key].get<long>();
}

double need_double(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number()) bad(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

std::string opt_string(const Json& j, const char* key, const std::string& dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  if (!j[key].is_string()) bad(std::string("\"") + key + "\" must be a string");
  return j[key].get<std::string>();
}

std::uint64_t opt_seed(const Json& j, const char* key, std::uint64_t dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  const Json& v = j[key];
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(v.get<long long>());
  }
  if (v.is_string()) {
    try {
      return std::stoull(v.get<std::string>());
    } catch (const std::exception&) {
      bad(std::string("\"") + key + "\" is not a valid seed");
    }
  }
  bad(std::string("\"") + key + "\" must be a nonnegative integer or decimal string");
}

// Schedules: explicit array, or {"from","to","step"}, or {"final": K}.
std::vector<long> parse_schedule(const Json& j, const char* key) {
  const Json& v = need(j, key);
  std::vector<long> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) bad(std::string("\"") + key + "\" entries must be integers");
      out.push_back(e.get<long>());
    }
  } else if (v.is_object() && v.contains("final")) {
    out.push_back(need_long(v, "final"));
  } else if (v.is_object()) {
    long from = need_long(v, "from");
    long to = need_long(v, "to");
    long step = opt_long(v, "step", 1);
    if (step < 1) bad("schedule step must be >= 1");
    for (long k = from; k <= to; k += step) out.push_back(k);
  } else {
    bad(std::string("\"") + key + "\" must be an array or a range object");
  }
  if (out.empty()) bad(std::string("\"") + key + "\" is empty");
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1 || (i > 0 && out[i] <= out[i - 1])) {
      bad(std::string("\"") + key + "\" must be strictly increasing and >= 1");
    }
  }
  return out;
}

PointWindow build_point(const Json& spec, const MeasureModel& m, long need_lo,
                        long need_hi, std::optional<std::uint64_t> seed_override) {
  const std::string kind = opt_string(spec, "kind", "random");
  if (kind == "random") {
    std::uint64_t seed = opt_seed(spec, "seed", 1);
    if (seed_override) seed = *seed_override;
    long length = opt_long(spec, "length", need_hi);
    if (length < need_hi || need_lo < 0) {
      bad("random points start at 0; requested coverage needs a longer window");
    }
    return random_window(m, length, seed);
  }
  if (kind == "pathological") {
    long lo = opt_long(spec, "lo", std::min(0L, need_lo));
    long hi = opt_long(spec, "hi", need_hi);
    if (lo > need_lo || hi < need_hi) bad("pathological window does not cover the requested range");
    return pathological_point(lo, hi);
  }
  if (kind == "explicit") {
    PointWindow x = point_from_json(spec);
    if (!x.covers(need_lo, need_hi)) bad("explicit point does not cover the requested range");
    return x;
  }
  bad("unknown point kind: " + kind);
}

struct Ctx {
  fs::path out_dir;
  int threads;
  std::optional<std::uint64_t> seed_override;
  RunOutcome* outcome;

  fs::path emit(const std::string& name, const std::string& content) const {
    fs::path p = out_dir / name;
    write_file_atomic(p, content);
    outcome->files_written.push_back(p);
    return p;
  }
  void line(const std::string& s) const { outcome->summary_lines.push_back(s); }
};

// --- experiment handlers ----------------------------------------------------

void run_stdiff(const Json& cfg, const Ctx& ctx) {
  MeasureModel m = measure_from_json(need(cfg, "measure"));
  CylinderFunction f = function_from_json(need(cfg, "function"));
  std::vector<long> ks = parse_schedule(cfg, "ks");
  PointWindow x = build_point(need(cfg, "point"), m, 0, ks.back(), ctx.seed_override);
  DiffSeries series = stdiff_series(m, x, ks, f);

  const std::string prefix = opt_string(cfg, "out", "stdiff");
  ctx.emit(prefix + ".csv", diff_series_csv(series));
  Json meta;
  meta["experiment"] = "stdiff";
  meta["measure"] = measure_to_json(m);
  meta["function"] = function_to_json(f);
  meta["point_provenance"] = x.provenance;
  meta["ks"] = ks;
  Json vals = Json::array();
  for (const auto& e : series.entries) {
    Json v;
    v["k"] = e.k;
    v["value"] = rat_str(*e.value);
    v["float"] = e.value_float;
    vals.push_back(v);
  }
  meta["values"] = vals;
  ctx.emit(prefix + ".json", meta.dump(2) + "\n");

  const auto& last = series.entries.back();
  ctx.line("stdiff: " + std::to_string(series.entries.size()) + " scales, final k=" +
           std::to_string(last.k) + " value " + rat_str(*last.value) + " (" +
           format_float(last.value_float) + ") -> " + prefix + ".csv");
}

void run_pathological(const Json& cfg, const Ctx& ctx) {
  const long n_max = opt_long(cfg, "checkpoints", 10);
  if (n_max < 1 || n_max > 30) bad("\"checkpoints\" must lie in [1, 30]");
  MeasureModel m = cfg.contains("measure")
                       ? measure_from_json(cfg["measure"])
                       : MeasureModel(BernoulliMeasure({Rat(1, 2), Rat(1, 2)}));
  if (alphabet_size(m) != 2) bad("the alternating-block point is binary");

  struct Check {
    long k;
    int n;
    CheckpointParity parity;
    Rat closed;
  };
  std::vector<Check> checks;
  for (int n = 1; n <= n_max; ++n) {
    auto [ke, ve] = checkpoint_values(n, CheckpointParity::Even);
    auto [ko, vo] = checkpoint_values(n, CheckpointParity::Odd);
    checks.push_back({ko, n, CheckpointParity::Odd, vo});
    checks.push_back({ke, n, CheckpointParity::Even, ve});
  }
  std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.k < b.k; });
  std::vector<long> ks;
  for (const auto& c : checks) ks.push_back(c.k);

  PointWindow x = pathological_point(0, ks.back());
  DiffSeries series = stdiff_series(m, x, ks, CylinderFunction::indicator(Word({0})));

  bool all_match = true;
  Json rows = Json::array();
  for (size_t i = 0; i < checks.size(); ++i) {
    bool match = *series.entries[i].value == checks[i].closed;
    all_match = all_match && match;
    Json r;
    r["n"] = checks[i].n;
    r["parity"] = checks[i].parity == CheckpointParity::Even ? "even" : "odd";
    r["k"] = checks[i].k;
    r["value"] = rat_str(*series.entries[i].value);
    r["closed_form"] = rat_str(checks[i].closed);
    r["match"] = match;
    rows.push_back(r);
  }
  const std::string prefix = opt_string(cfg, "out", "pathological");
  ctx.emit(prefix + ".csv", diff_series_csv(series));
  Json meta;
  meta["experiment"] = "pathological";
  meta["checkpoints"] = rows;
  meta["all_match"] = all_match;
  ctx.emit(prefix + ".json", meta.dump(2) + "\n");
  ctx.line(std::string("pathological: ") + std::to_string(checks.size()) + " checkpoints, closed forms " +
           (all_match ? "all match" : "MISMATCH") + " -> " + prefix + ".json");
}

void run_normality(const Json& cfg, const Ctx& ctx) {
  MeasureModel m = measure_from_json(need(cfg, "measure"));
  const long k = need_long(cfg, "k");
  const long max_len = opt_long(cfg, "max_len", 3);
  if (max_len < 1 || max_len > 12) bad("\"max_len\" must lie in [1, 12]");
  PointWindow x = build_point(need(cfg, "point"), m, 0, k + max_len - 1, ctx.seed_override);
  NormalityReport rep = normality_report(m, x, static_cast<int>(max_len), k);

  const std::string prefix = opt_string(cfg, "out", "normality");
  Json meta = normality_to_json(rep);
  meta["experiment"] = "normality";
  meta["point_provenance"] = x.provenance;
  ctx.emit(prefix + ".json", meta.dump(2) + "\n");
  ctx.line("normality: k=" + std::to_string(k) + " max deviation " +
           format_float(rat_double(rep.max_deviation)) + " over " +
           std::to_string(rep.rows.size()) + " words -> " + prefix + ".json");
}

Sft sft_from_json(const Json& j) {
  const Json& rows = need(j, "allowed");
  if (!rows.is_array() || rows.empty()) bad("\"allowed\" must be a nonempty matrix");
  std::vector<std::vector<bool>> allowed;
  for (const auto& r : rows) {
    if (!r.is_array()) bad("\"allowed\" must be a matrix");
    std::vector<bool> row;
    for (const auto& e : r) {
      if (e.is_boolean()) {
        row.push_back(e.get<bool>());
      } else if (e.is_number_integer()) {
        row.push_back(e.get<long>() != 0);
      } else {
        bad("\"allowed\" entries must be booleans or 0/1");
      }
    }
    allowed.push_back(std::move(row));
  }
  const int d = static_cast<int>(allowed.size());  // before the move
  return Sft(d, std::move(allowed));
}

void run_gauge(const Json& cfg, const Ctx& ctx) {
  Sft s = sft_from_json(need(cfg, "sft"));
  CylinderFunction f = function_from_json(need(cfg, "function"));
  std::vector<long> ks = cfg.contains("ks")
                             ? parse_schedule(cfg, "ks")
                             : [&] {
                                 std::vector<long> v;
                                 for (long k = 1; k <= opt_long(cfg, "k_max", 100); ++k) v.push_back(k);
                                 return v;
                               }();
  GaugeSeries series = gauge_series(s, f, ks);
  WeightedTransitionGraph g = build_transition_graph(s, f);
  MaxMeanCycle mmc = max_mean_cycle(g);

  const std::string prefix = opt_string(cfg, "out", "gauge");
  ctx.emit(prefix + ".csv", gauge_series_csv(series));
  ctx.emit(prefix + ".edges.txt", graph_edge_list(g));

  Json meta;
  meta["experiment"] = "gauge";
  meta["window"] = g.window;
  meta["nodes"] = g.nodes.size();
  if (cfg.contains("measure")) {
    MeasureModel m = measure_from_json(cfg["measure"]);
    GapReport rep = gauge_gap(m, s, f, ks.back());
    meta["gap_report"] = gap_report_json(rep, g);
  } else {
    GapReport rep;
    rep.gamma_kmax = series.entries.back().value;
    rep.mmc_value = mmc.value;
    rep.witness = mmc;
    Json r;
    r["gamma_kmax"] = rat_str(rep.gamma_kmax);
    r["max_mean_cycle"] = rat_str(rep.mmc_value);
    meta["gap_report"] = r;
  }
  ctx.emit(prefix + ".json", meta.dump(2) + "\n");
  ctx.line("gauge: Gamma_" + std::to_string(ks.back()) + " = " +
           rat_str(series.entries.back().value) + ", cycle max " + rat_str(mmc.value) +
           " -> " + prefix + ".csv");
}

void run_rotation(const Json& cfg, const Ctx& ctx) {
  const std::string map = opt_string(cfg, "map", "rotation");
  const std::string prefix = opt_string(cfg, "out", "rotation");
  if (map == "identity") {
    const double x0 = need_double(cfg, "x0");
    const long k = need_long(cfg, "k");
    IdentityCounterexample ce = identity_counterexample(x0, k);
    Json meta;
    meta["experiment"] = "rotation";
    meta["map"] = "identity";
    meta["x0"] = x0;
    meta["k"] = k;
    meta["ball_average"] = ce.ball_average;
    meta["integral"] = ce.integral;
    ctx.emit(prefix + ".json", meta.dump(2) + "\n");
    ctx.line("rotation[identity]: ball average " + format_float(ce.ball_average) +
             " vs integral " + format_float(ce.integral) + " -> " + prefix + ".json");
    return;
  }
  if (map != "rotation") bad("unknown map: " + map);

  RotationSystem sys;
  const Json& th = need(cfg, "theta");
  if (th.is_string() && th.get<std::string>() == "golden") {
    sys.theta = (std::sqrt(5.0) - 1.0) / 2.0;
  } else if (th.is_number()) {
    sys.theta = th.get<double>();
  } else {
    bad("\"theta\" must be a number or \"golden\"");
  }
  if (cfg.contains("radius")) {
    const Json& r = cfg["radius"];
    sys.radii.scale = r.contains("scale") ? need_double(r, "scale") : 1.0;
    sys.radii.exponent = r.contains("exponent") ? need_double(r, "exponent") : 1.0;
  }

  TrigPolynomial f;
  const Json& terms = need(need(cfg, "function"), "terms");
  if (!terms.is_array() || terms.empty()) bad("trig function needs terms");
  for (const auto& t : terms) {
    TrigTerm term;
    term.frequency = static_cast<int>(opt_long(t, "frequency", 0));
    if (term.frequency < 0) bad("trig frequencies must be >= 0");
    if (t.contains("cos")) term.cos_coeff = need_double(t, "cos");
    if (t.contains("sin")) term.sin_coeff = need_double(t, "sin");
    f.terms.push_back(term);
  }

  const long k = need_long(cfg, "k");
  std::vector<double> centers;
  const Json& cs = need(cfg, "centers");
  if (cs.is_array()) {
    for (const auto& c : cs) {
      if (!c.is_number()) bad("\"centers\" entries must be numbers");
      centers.push_back(c.get<double>());
    }
  } else {
    long count = need_long(cs, "count");
    if (count < 1) bad("\"centers.count\" must be >= 1");
    std::uint64_t seed = opt_seed(cs, "seed", 7);
    if (ctx.seed_override) seed = *ctx.seed_override;
    for (long i = 0; i < count; ++i) {
      centers.push_back(std::ldexp(static_cast<double>(counter_hash(seed, static_cast<std::uint64_t>(i), 0, 0) >> 11), -53));
    }
  }
  if (centers.empty()) bad("\"centers\" is empty");

  double max_abs_dev = 0.0;
  const double mean = f.lebesgue_integral();
  Json rows = Json::array();
  for (size_t i = 0; i < centers.size(); ++i) {
    double v = rotation_ball_stdiff(sys, centers[i], k, f);
    max_abs_dev = std::max(max_abs_dev, std::abs(v - mean));
    Json r;
    r["center"] = centers[i];
    r["value"] = v;
    rows.push_back(r);
  }
  Json meta;
  meta["experiment"] = "rotation";
  meta["map"] = "rotation";
  meta["theta"] = sys.theta;
  meta["k"] = k;
  meta["radius"] = sys.radii.radius(k);
  meta["integral"] = mean;
  meta["values"] = rows;
  meta["max_abs_deviation"] = max_abs_dev;
  ctx.emit(prefix + ".json", meta.dump(2) + "\n");
  ctx.line("rotation: k=" + std::to_string(k) + ", " + std::to_string(centers.size()) +
           " centers, max |avg - integral| = " + format_float(max_abs_dev) + " -> " +
           prefix + ".json");
}

void run_montecarlo(const Json& cfg, const Ctx& ctx) {
  MeasureModel m = measure_from_json(need(cfg, "measure"));
  EstimatorSpec spec;
  spec.word = Word([&] {
    const Json& w = need(cfg, "word");
    if (!w.is_array()) bad("\"word\" must be an array of symbols");
    std::vector<int> syms;
    for (const auto& s : w) {
      if (!s.is_number_integer()) bad("\"word\" symbols must be integers");
      syms.push_back(s.get<int>());
    }
    return syms;
  }());
  const std::string mode = opt_string(cfg, "mode", "fixed");
  if (mode != "fixed" && mode != "per_k") bad("\"mode\" must be \"fixed\" or \"per_k\"");
  spec.centers = mode == "fixed" ? CenterMode::FixedPoint : CenterMode::PerK;
  spec.schedule = parse_schedule(cfg, "schedule");

  McOptions opt;
  opt.master_seed = opt_seed(cfg, "seed", 1);
  if (ctx.seed_override) opt.master_seed = *ctx.seed_override;
  opt.trials = static_cast<int>(opt_long(cfg, "trials", 100));
  opt.epsilon = cfg.contains("epsilon") ? need_double(cfg, "epsilon") : 0.05;
  opt.threads = ctx.threads;

  McRun run = spec.centers == CenterMode::FixedPoint ? run_fixed_center(m, spec, opt)
                                                     : run_random_centers(m, spec, opt);

  const std::string prefix = opt_string(cfg, "out", "montecarlo");
  std::string lines;
  for (size_t t = 0; t < run.trials.size(); ++t) {
    lines += trial_to_json(run.trials[t], static_cast<int>(t)).dump() + "\n";
  }
  ctx.emit(prefix + ".jsonl", lines);
  ctx.emit(prefix + ".summary.json", mc_summary_json(run, m).dump(2) + "\n");
  char frac[32];
  std::snprintf(frac, sizeof(frac), "%.3f", run.pass_fraction);
  ctx.line("montecarlo[" + mode + "]: pass fraction " + frac + " of " +
           std::to_string(opt.trials) + " trials (eps " + format_float(opt.epsilon) +
           ") -> " + prefix + ".summary.json");
}

void run_one(const Json& cfg, const Ctx& ctx) {
  if (!cfg.is_object()) bad("each experiment must be a JSON object");
  const std::string kind = opt_string(cfg, "experiment", "");
  if (kind == "stdiff") return run_stdiff(cfg, ctx);
  if (kind == "pathological") return run_pathological(cfg, ctx);
  if (kind == "normality") return run_normality(cfg, ctx);
  if (kind == "gauge") return run_gauge(cfg, ctx);
  if (kind == "rotation") return run_rotation(cfg, ctx);
  if (kind == "montecarlo") return run_montecarlo(cfg, ctx);
  bad(kind.empty() ? "missing \"experiment\" kind" : "unknown experiment kind: " + kind);
}

}  // namespace

Json load_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ValidationError("config is not valid JSON: " + path.string());
  return j;
}

RunOutcome run_experiments(const Json& config, const fs::path& out_dir, int threads,
                           std::optional<std::uint64_t> seed_override) {
  RunOutcome outcome;
  Ctx ctx{out_dir, threads, seed_override, &outcome};
  if (config.is_object() && config.contains("experiments")) {
    const Json& list = config["experiments"];
    if (!list.is_array() || list.empty()) bad("\"experiments\" must be a nonempty array");
    for (const auto& cfg : list) run_one(cfg, ctx);
  } else {
    run_one(config, ctx);
  }
  return outcome;
}

}  // namespace ergolab
