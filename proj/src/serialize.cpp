#include "ergolab/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace ergolab {

namespace {

Rat rat_from_json(const Json& j) {
  if (!j.is_string()) throw ValidationError("rationals must be strings like \"1/2\"");
  return parse_rat(j.get<std::string>());
}

std::vector<int> symbols_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of symbols");
  std::vector<int> out;
  for (const auto& s : j) {
    if (!s.is_number_integer()) throw ValidationError("symbols must be integers");
    out.push_back(s.get<int>());
  }
  return out;
}

}  // namespace

Json measure_to_json(const MeasureModel& m) {
  Json j;
  if (const auto* b = std::get_if<BernoulliMeasure>(&m)) {
    j["type"] = "bernoulli";
    Json p = Json::array();
    for (const auto& q : b->probs()) p.push_back(rat_str(q));
    j["p"] = p;
    return j;
  }
  const auto& mk = std::get<MarkovMeasure>(m);
  j["type"] = "markov";
  Json rows = Json::array();
  for (const auto& row : mk.matrix()) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(rat_str(q));
    rows.push_back(r);
  }
  j["P"] = rows;
  return j;
}

MeasureModel measure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ValidationError("measure JSON needs a \"type\"");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "bernoulli") {
    if (!j.contains("p") || !j["p"].is_array()) {
      throw ValidationError("bernoulli measure needs \"p\"");
    }
    std::vector<Rat> p;
    for (const auto& e : j["p"]) p.push_back(rat_from_json(e));
    return BernoulliMeasure(std::move(p));
  }
  if (type == "markov") {
    if (!j.contains("P") || !j["P"].is_array()) {
      throw ValidationError("markov measure needs \"P\"");
    }
    std::vector<std::vector<Rat>> rows;
    for (const auto& r : j["P"]) {
      if (!r.is_array()) throw ValidationError("\"P\" must be a matrix");
      std::vector<Rat> row;
      for (const auto& e : r) row.push_back(rat_from_json(e));
      rows.push_back(std::move(row));
    }
    return MarkovMeasure(std::move(rows));
  }
  throw ValidationError("unknown measure type: " + type);
}

Json point_to_json(const PointWindow& x) {
  Json j;
  j["lo"] = x.lo;
  j["hi"] = x.hi;
  j["symbols"] = x.symbols;
  j["provenance"] = x.provenance;
  return j;
}

PointWindow point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("symbols")) {
    throw ValidationError("point JSON needs \"lo\" and \"symbols\"");
  }
  if (!j["lo"].is_number_integer()) throw ValidationError("\"lo\" must be an integer");
  std::string prov = j.value("provenance", std::string("explicit"));
  PointWindow x(j["lo"].get<long>(), symbols_from_json(j["symbols"]), prov);
  if (j.contains("hi") && (!j["hi"].is_number_integer() || j["hi"].get<long>() != x.hi)) {
    throw ValidationError("\"hi\" disagrees with the symbol count");
  }
  return x;
}

Json function_to_json(const CylinderFunction& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    Json e;
    e["coeff"] = rat_str(t.coeff);
    e["offset"] = t.indicator.offset;
    e["word"] = t.indicator.word.symbols;
    terms.push_back(e);
  }
  Json j;
  j["terms"] = terms;
  return j;
}

CylinderFunction function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw ValidationError("function JSON needs \"terms\"");
  }
  std::vector<CylinderFunction::Term> terms;
  for (const auto& e : j["terms"]) {
    if (!e.is_object() || !e.contains("coeff") || !e.contains("word")) {
      throw ValidationError("each term needs \"coeff\" and \"word\"");
    }
    long offset = 0;
    if (e.contains("offset")) {
      if (!e["offset"].is_number_integer()) throw ValidationError("\"offset\" must be an integer");
      offset = e["offset"].get<long>();
    }
    terms.push_back({rat_from_json(e["coeff"]),
                     ShiftedCylinderIndicator(offset, Word(symbols_from_json(e["word"])))});
  }
  return CylinderFunction(std::move(terms));
}

std::string format_float(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

const char* kCsvHeader = "# ergolab-csv v1\nk,value_num,value_den,value_float\n";

}  // namespace

std::string diff_series_csv(const DiffSeries& s) {
  std::string out = kCsvHeader;
  for (const auto& e : s.entries) {
    out += std::to_string(e.k);
    if (e.value) {
      out += "," + e.value->get_num().get_str() + "," + e.value->get_den().get_str();
    } else {
      out += ",,";
    }
    out += "," + format_float(e.value_float) + "\n";
  }
  return out;
}

std::string gauge_series_csv(const GaugeSeries& s) {
  std::string out = kCsvHeader;
  for (const auto& e : s.entries) {
    out += std::to_string(e.k) + "," + e.value.get_num().get_str() + "," +
           e.value.get_den().get_str() + "," + format_float(rat_double(e.value)) + "\n";
  }
  return out;
}

namespace {

std::string node_label(const Word& w, int alphabet) {
  std::string out;
  for (long j = 0; j < w.length(); ++j) {
    if (alphabet > 10 && j > 0) out += '-';
    out += std::to_string(w.at(j));
  }
  return out;
}

}  // namespace

std::string graph_edge_list(const WeightedTransitionGraph& g) {
  int alphabet = 0;
  for (const auto& n : g.nodes) {
    for (int s : n.symbols) alphabet = std::max(alphabet, s + 1);
  }
  std::string out;
  for (const auto& e : g.edges) {
    out += node_label(g.nodes[static_cast<size_t>(e.src)], alphabet) + " " +
           node_label(g.nodes[static_cast<size_t>(e.dst)], alphabet) + " " +
           e.weight.get_num().get_str() + "/" + e.weight.get_den().get_str() + "\n";
  }
  return out;
}

Json trial_to_json(const TrialResult& t, int trial_index) {
  Json j;
  j["trial"] = trial_index;
  j["seed"] = std::to_string(t.seed);  // u64 does not fit JSON numbers
  Json vals = Json::array();
  for (const auto& [k, v] : t.values) {
    Json e;
    e["k"] = k;
    e["value"] = rat_str(v);
    e["float"] = rat_double(v);
    vals.push_back(e);
  }
  j["values"] = vals;
  j["final_deviation"] = rat_str(t.final_deviation);
  j["final_deviation_float"] = rat_double(t.final_deviation);
  return j;
}

Json mc_summary_json(const McRun& run, const MeasureModel& m) {
  Json j;
  j["mode"] = run.spec.centers == CenterMode::FixedPoint ? "fixed" : "per_k";
  j["word"] = run.spec.word.symbols;
  j["schedule"] = run.spec.schedule;
  j["master_seed"] = std::to_string(run.options.master_seed);
  j["trials"] = run.options.trials;
  j["epsilon"] = run.options.epsilon;
  j["target"] = rat_str(run.target);
  j["target_float"] = rat_double(run.target);
  j["pass_fraction"] = run.pass_fraction;
  j["measure"] = measure_to_json(m);
  return j;
}

Json normality_to_json(const NormalityReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json e;
    e["word"] = r.word.symbols;
    e["freq"] = rat_str(r.freq);
    e["mu"] = rat_str(r.mu);
    e["deviation"] = rat_str(r.deviation);
    e["deviation_float"] = rat_double(r.deviation);
    rows.push_back(e);
  }
  Json j;
  j["k"] = rep.k;
  j["max_len"] = rep.max_len;
  j["rows"] = rows;
  j["max_deviation"] = rat_str(rep.max_deviation);
  j["max_deviation_float"] = rat_double(rep.max_deviation);
  return j;
}

Json gap_report_json(const GapReport& rep, const WeightedTransitionGraph& g) {
  int alphabet = 0;
  for (const auto& n : g.nodes) {
    for (int s : n.symbols) alphabet = std::max(alphabet, s + 1);
  }
  Json cyc = Json::array();
  for (int v : rep.witness.cycle) {
    cyc.push_back(node_label(g.nodes[static_cast<size_t>(v)], alphabet));
  }
  Json j;
  j["gamma_kmax"] = rat_str(rep.gamma_kmax);
  j["max_mean_cycle"] = rat_str(rep.mmc_value);
  j["integral"] = rat_str(rep.mu_integral);
  j["gap"] = rat_str(rep.gap);
  j["gap_float"] = rat_double(rep.gap);
  j["certified_not_uniquely_ergodic"] = rep.certified_not_uniquely_ergodic;
  j["witness_cycle"] = cyc;
  return j;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace ergolab
