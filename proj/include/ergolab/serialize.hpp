#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ergolab/ergodic_opt.hpp"
#include "ergolab/mc.hpp"
#include "ergolab/stdiff.hpp"

namespace ergolab {

using Json = nlohmann::json;

// Measures: {"type":"bernoulli","p":["1/2","1/2"]} and
// {"type":"markov","P":[["1/2","1/2"],["1","0"]]}. Rationals travel as
// canonical "num" / "num/den" strings, so serialize-parse is exact.
Json measure_to_json(const MeasureModel& m);
MeasureModel measure_from_json(const Json& j);

// Points: {"lo":..,"hi":..,"symbols":[..],"provenance":".."}.
Json point_to_json(const PointWindow& x);
PointWindow point_from_json(const Json& j);

// Functions: {"terms":[{"coeff":"1","offset":0,"word":[0]}]}.
Json function_to_json(const CylinderFunction& f);
CylinderFunction function_from_json(const Json& j);

// Versioned CSV for value-per-k series:
//   # ergolab-csv v1
//   k,value_num,value_den,value_float
// Exact columns stay empty for float-only series. Floats print with %.12g.
std::string diff_series_csv(const DiffSeries& s);
std::string gauge_series_csv(const GaugeSeries& s);

// Plain edge list, one "src dst weight_num/weight_den" line per edge; nodes
// print as their window words (digits joined, '-' separated past base 10).
std::string graph_edge_list(const WeightedTransitionGraph& g);

std::string format_float(double v);  // %.12g

Json trial_to_json(const TrialResult& t, int trial_index);
Json mc_summary_json(const McRun& run, const MeasureModel& m);
Json normality_to_json(const NormalityReport& rep);
Json gap_report_json(const GapReport& rep, const WeightedTransitionGraph& g);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a half-written file and reruns replace outputs in one shot.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ergolab
