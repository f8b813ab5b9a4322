// Acceptance gate: one pass/fail line per criterion, nonzero exit if any fail.
#include <cstdlib>
#include <iostream>

#include "ergolab/acceptance.hpp"

int main() {
  int threads = 4;
  if (const char* env = std::getenv("ERGOLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) threads = static_cast<int>(v);
  }
  auto results = ergolab::run_acceptance(ergolab::Suite::All, threads);
  for (const auto& r : results) std::cout << ergolab::format_criterion(r) << "\n";
  int passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  std::cout << "acceptance: " << passed << "/" << results.size() << " criteria passed\n";
  return ergolab::all_passed(results) ? 0 : 1;
}
