// Python surface: the exact kernels cross as canonical "num/den" strings
// plus float mirrors, so nothing is lost to binary floating point.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ergolab/ergodic_opt.hpp"
#include "ergolab/generators.hpp"
#include "ergolab/mc.hpp"
#include "ergolab/rotation.hpp"
#include "ergolab/serialize.hpp"
#include "ergolab/stdiff.hpp"

namespace py = pybind11;
using namespace ergolab;

namespace {

// Opaque handle; pybind11's stl.h owns std::variant conversions, so the
// measure crosses the boundary inside a plain struct.
struct PyMeasure {
  MeasureModel model;
};

std::vector<Rat> parse_rats(const std::vector<std::string>& strs) {
  std::vector<Rat> out;
  out.reserve(strs.size());
  for (const auto& s : strs) out.push_back(parse_rat(s));
  return out;
}

using PyTerms = std::vector<std::tuple<std::string, long, std::vector<int>>>;

CylinderFunction function_from_terms(const PyTerms& terms) {
  std::vector<CylinderFunction::Term> ts;
  for (const auto& [coeff, offset, word] : terms) {
    ts.push_back({parse_rat(coeff), ShiftedCylinderIndicator(offset, Word(word))});
  }
  return CylinderFunction(std::move(ts));
}

Sft sft_from_rows(const std::vector<std::vector<bool>>& allowed) {
  return Sft(static_cast<int>(allowed.size()), allowed);
}

using PyTrig = std::vector<std::tuple<int, double, double>>;

TrigPolynomial trig_from_terms(const PyTrig& terms) {
  TrigPolynomial f;
  for (const auto& [n, c, s] : terms) f.terms.push_back({n, c, s});
  return f;
}

py::dict series_entry(const DiffSeriesEntry& e) {
  py::dict d;
  d["k"] = e.k;
  if (e.value) d["value"] = rat_str(*e.value);
  d["float"] = e.value_float;
  return d;
}

py::dict mc_summary(const McRun& run) {
  py::dict d;
  d["target"] = rat_str(run.target);
  d["target_float"] = rat_double(run.target);
  d["pass_fraction"] = run.pass_fraction;
  py::list trials;
  for (const auto& t : run.trials) {
    py::dict tr;
    tr["seed"] = t.seed;
    py::list vals;
    for (const auto& [k, v] : t.values) {
      py::dict e;
      e["k"] = k;
      e["value"] = rat_str(v);
      e["float"] = rat_double(v);
      vals.append(e);
    }
    tr["values"] = vals;
    tr["final_deviation"] = rat_str(t.final_deviation);
    trials.append(tr);
  }
  d["trials"] = trials;
  return d;
}

McRun run_mc(const MeasureModel& m, const std::vector<int>& word, const std::string& mode,
             const std::vector<long>& schedule, std::uint64_t seed, int trials, double epsilon,
             int threads) {
  EstimatorSpec spec;
  spec.word = Word(word);
  spec.schedule = schedule;
  McOptions opt;
  opt.master_seed = seed;
  opt.trials = trials;
  opt.epsilon = epsilon;
  opt.threads = threads;
  if (mode == "fixed") {
    spec.centers = CenterMode::FixedPoint;
    return run_fixed_center(m, spec, opt);
  }
  if (mode == "per_k") {
    spec.centers = CenterMode::PerK;
    return run_random_centers(m, spec, opt);
  }
  throw ValidationError("mode must be \"fixed\" or \"per_k\"");
}

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(ergolab, m) {
  m.doc() = "exact spatial-temporal averaging on shifts and circle rotations";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ZeroMeasureCylinder>(m, "ZeroMeasureCylinderError", PyExc_ArithmeticError);
  py::register_exception<InsufficientWindow>(m, "InsufficientWindowError", PyExc_IndexError);
  py::register_exception<ComplexityGuard>(m, "ComplexityGuardError", PyExc_RuntimeError);
  py::register_exception<EmptySft>(m, "EmptySftError", PyExc_ValueError);
  py::register_exception<DegenerateInterval>(m, "DegenerateIntervalError", PyExc_ValueError);
  py::register_exception<BallOutOfRange>(m, "BallOutOfRangeError", PyExc_ValueError);

  py::class_<PyMeasure>(m, "Measure")
      .def_static(
          "bernoulli",
          [](const std::vector<std::string>& p) {
            return PyMeasure{BernoulliMeasure(parse_rats(p))};
          },
          py::arg("p"))
      .def_static(
          "markov",
          [](const std::vector<std::vector<std::string>>& P) {
            std::vector<std::vector<Rat>> rows;
            for (const auto& r : P) rows.push_back(parse_rats(r));
            return PyMeasure{MarkovMeasure(std::move(rows))};
          },
          py::arg("P"))
      .def("alphabet_size", [](const PyMeasure& mm) { return alphabet_size(mm.model); })
      .def(
          "word_measure",
          [](const PyMeasure& mm, const std::vector<int>& w) {
            return rat_str(word_measure(mm.model, Word(w)));
          },
          py::arg("word"))
      .def(
          "word_measure_float",
          [](const PyMeasure& mm, const std::vector<int>& w) {
            return rat_double(word_measure(mm.model, Word(w)));
          },
          py::arg("word"))
      .def("to_json", [](const PyMeasure& mm) { return measure_to_json(mm.model).dump(); })
      .def_static("from_json", [](const std::string& s) {
        return PyMeasure{measure_from_json(Json::parse(s))};
      });

  m.def(
      "integral",
      [](const PyMeasure& mm, const PyTerms& terms) {
        return rat_str(integral(mm.model, function_from_terms(terms)));
      },
      py::arg("measure"), py::arg("terms"),
      "integral of sum coeff * indicator(word at offset); terms are (coeff, offset, word)");

  m.def(
      "stdiff_value",
      [](const PyMeasure& mm, const std::vector<int>& symbols, long k, const PyTerms& terms) {
        PointWindow x(0, symbols, "python");
        Rat v = stdiff_value(mm.model, x, k, function_from_terms(terms));
        return py::make_tuple(rat_str(v), rat_double(v));
      },
      py::arg("measure"), py::arg("symbols"), py::arg("k"), py::arg("terms"),
      "spatial-temporal average of the cylinder function over the rank-k window");

  m.def(
      "stdiff_series",
      [](const PyMeasure& mm, const std::vector<int>& symbols, const std::vector<long>& ks,
         const PyTerms& terms) {
        PointWindow x(0, symbols, "python");
        DiffSeries s = stdiff_series(mm.model, x, ks, function_from_terms(terms));
        py::list out;
        for (const auto& e : s.entries) out.append(series_entry(e));
        return out;
      },
      py::arg("measure"), py::arg("symbols"), py::arg("ks"), py::arg("terms"));

  m.def(
      "frequency",
      [](const std::vector<int>& symbols, const std::vector<int>& word, long k,
         const std::string& cap) {
        PointWindow x(0, symbols, "python");
        FrequencyCap c;
        if (cap == "k_minus_len") {
          c = FrequencyCap::ToKMinusL;
        } else if (cap == "k_minus_one") {
          c = FrequencyCap::ToKMinusOne;
        } else {
          throw ValidationError("cap must be \"k_minus_len\" or \"k_minus_one\"");
        }
        return rat_str(frequency(x, Word(word), k, c));
      },
      py::arg("symbols"), py::arg("word"), py::arg("k"), py::arg("cap") = "k_minus_one");

  m.def(
      "normality_report",
      [](const PyMeasure& mm, const std::vector<int>& symbols, int max_len, long k) {
        PointWindow x(0, symbols, "python");
        return json_to_py(normality_to_json(normality_report(mm.model, x, max_len, k)));
      },
      py::arg("measure"), py::arg("symbols"), py::arg("max_len"), py::arg("k"));

  m.def("pathological_point",
        [](long lo, long hi) { return pathological_point(lo, hi).symbols; },
        py::arg("lo"), py::arg("hi"));

  m.def(
      "checkpoint_values",
      [](int n, const std::string& parity) {
        CheckpointParity p;
        if (parity == "even") {
          p = CheckpointParity::Even;
        } else if (parity == "odd") {
          p = CheckpointParity::Odd;
        } else {
          throw ValidationError("parity must be \"even\" or \"odd\"");
        }
        auto [k, v] = checkpoint_values(n, p);
        return py::make_tuple(k, rat_str(v), rat_double(v));
      },
      py::arg("n"), py::arg("parity"));

  m.def(
      "random_window",
      [](const PyMeasure& mm, long k, std::uint64_t seed) {
        return random_window(mm.model, k, seed).symbols;
      },
      py::arg("measure"), py::arg("k"), py::arg("seed"));

  m.def(
      "perturb",
      [](const std::vector<int>& symbols, const std::vector<std::pair<long, int>>& edits,
         int alphabet) {
        PointWindow x(0, symbols, "python");
        std::vector<Edit> es;
        for (const auto& [i, s] : edits) es.push_back({i, s});
        return perturb(x, es, Alphabet(alphabet)).symbols;
      },
      py::arg("symbols"), py::arg("edits"), py::arg("alphabet") = 2);

  m.def(
      "finite_gauge",
      [](const std::vector<std::vector<bool>>& allowed, const PyTerms& terms, long k) {
        return rat_str(finite_gauge(sft_from_rows(allowed), function_from_terms(terms), k));
      },
      py::arg("allowed"), py::arg("terms"), py::arg("k"));

  m.def(
      "max_mean_cycle",
      [](const std::vector<std::vector<bool>>& allowed, const PyTerms& terms) {
        Sft s = sft_from_rows(allowed);
        WeightedTransitionGraph g = build_transition_graph(s, function_from_terms(terms));
        MaxMeanCycle mmc = max_mean_cycle(g);
        py::dict d;
        d["value"] = rat_str(mmc.value);
        d["value_float"] = rat_double(mmc.value);
        py::list cyc;
        for (int v : mmc.cycle) cyc.append(g.nodes[static_cast<size_t>(v)].symbols);
        d["cycle"] = cyc;
        return d;
      },
      py::arg("allowed"), py::arg("terms"));

  m.def(
      "gauge_gap",
      [](const PyMeasure& mm, const std::vector<std::vector<bool>>& allowed,
         const PyTerms& terms, long k_max) {
        Sft s = sft_from_rows(allowed);
        CylinderFunction f = function_from_terms(terms);
        GapReport rep = gauge_gap(mm.model, s, f, k_max);
        WeightedTransitionGraph g = build_transition_graph(s, f);
        return json_to_py(gap_report_json(rep, g));
      },
      py::arg("measure"), py::arg("allowed"), py::arg("terms"), py::arg("k_max"));

  m.def(
      "interval_average",
      [](const PyTrig& terms, double a, double b) {
        return interval_average(trig_from_terms(terms), a, b);
      },
      py::arg("terms"), py::arg("a"), py::arg("b"),
      "terms are (frequency, cos_coeff, sin_coeff)");

  m.def(
      "rotation_ball_stdiff",
      [](double theta, double scale, double exponent, double x, long k, const PyTrig& terms) {
        RotationSystem sys{theta, {scale, exponent}};
        return rotation_ball_stdiff(sys, x, k, trig_from_terms(terms));
      },
      py::arg("theta"), py::arg("scale"), py::arg("exponent"), py::arg("x"), py::arg("k"),
      py::arg("terms"));

  m.def(
      "identity_counterexample",
      [](double x0, long k) {
        auto c = identity_counterexample(x0, k);
        return py::make_tuple(c.ball_average, c.integral);
      },
      py::arg("x0"), py::arg("k"));

  m.def(
      "xi_mean_bruteforce",
      [](const PyMeasure& mm, long k, long i, const std::vector<int>& word) {
        const auto* b = std::get_if<BernoulliMeasure>(&mm.model);
        if (!b) throw ValidationError("the enumeration oracle handles bernoulli measures");
        return rat_str(xi_mean_bruteforce(*b, k, i, Word(word)));
      },
      py::arg("measure"), py::arg("k"), py::arg("i"), py::arg("word"));

  m.def(
      "split_subsequences",
      [](long k, long ell) {
        SplitIndices s = split_subsequences(k, ell);
        return py::make_tuple(s.classes, s.remainder);
      },
      py::arg("k"), py::arg("ell"));

  m.def("run_montecarlo",
        [](const PyMeasure& mm, const std::vector<int>& word, const std::string& mode,
           const std::vector<long>& schedule, std::uint64_t seed, int trials, double epsilon,
           int threads) {
          return mc_summary(run_mc(mm.model, word, mode, schedule, seed, trials, epsilon, threads));
        },
        py::arg("measure"), py::arg("word"), py::arg("mode"), py::arg("schedule"),
        py::arg("seed") = 1, py::arg("trials") = 100, py::arg("epsilon") = 0.05,
        py::arg("threads") = 1);
}
