#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ergolab {

// The shippable-behavior gate: ten checks, each printing one PASS/FAIL line.
// "Exact" criteria compare GMP rationals for equality; "montecarlo" criteria
// use pinned seeds and pinned tolerance bands, so they are just as
// deterministic. Budgets (where a criterion carries one) are wall-clock
// seconds and part of the pass condition.
enum class Suite { Exact, MonteCarlo, All };

std::optional<Suite> parse_suite(const std::string& name);  // exact|montecarlo|all

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(Suite suite, int threads);

std::string format_criterion(const CriterionResult& r);
bool all_passed(const std::vector<CriterionResult>& rs);

}  // namespace ergolab
