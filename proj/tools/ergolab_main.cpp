#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "ergolab/acceptance.hpp"
#include "ergolab/experiment.hpp"

namespace {

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(4u, std::max(1u, hw)));
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("ERGOLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    std::cerr << "warning: ignoring bad ERGOLAB_THREADS value '" << env << "'\n";
  }
  return default_threads();
}

std::optional<std::uint64_t> parse_seed_flag(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    size_t used = 0;
    std::uint64_t v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ergolab::ValidationError("--seed must be a nonnegative 64-bit integer");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergolab: exact spatial-temporal averaging experiments on shifts and rotations"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run experiments described by a JSON config");
  std::string config_path;
  std::string out_dir = "out";
  std::string seed_flag;
  int threads_flag = 0;
  run->add_option("-c,--config", config_path, "experiment config (JSON)")->required();
  run->add_option("-o,--out", out_dir, "output directory (default: out)");
  run->add_option("-t,--threads", threads_flag, "worker threads (default: ERGOLAB_THREADS or 4)");
  run->add_option("-s,--seed", seed_flag, "override every seed in the config");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  std::string suite_name = "all";
  int verify_threads_flag = 0;
  verify->add_option("suite", suite_name, "exact | montecarlo | all (default: all)");
  verify->add_option("-t,--threads", verify_threads_flag, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad command lines are validation failures
  }

  if (run->parsed()) {
    try {
      auto seed = parse_seed_flag(seed_flag);
      ergolab::Json cfg = ergolab::load_config_file(config_path);
      auto outcome =
          ergolab::run_experiments(cfg, out_dir, resolve_threads(threads_flag), seed);
      for (const auto& line : outcome.summary_lines) std::cout << line << "\n";
      return 0;
    } catch (const ergolab::ValidationError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "runtime error: " << e.what() << "\n";
      return 3;
    }
  }

  // verify
  auto suite = ergolab::parse_suite(suite_name);
  if (!suite) {
    std::cerr << "unknown suite '" << suite_name << "' (expected exact, montecarlo or all)\n";
    return 2;
  }
  try {
    auto results = ergolab::run_acceptance(*suite, resolve_threads(verify_threads_flag));
    for (const auto& r : results) std::cout << ergolab::format_criterion(r) << "\n";
    int passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    std::cout << "verify[" << suite_name << "]: " << passed << "/" << results.size()
              << " criteria passed\n";
    return ergolab::all_passed(results) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "verify crashed: " << e.what() << "\n";
    return 1;
  }
}
