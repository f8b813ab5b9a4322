#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/serialize.hpp"

namespace ergolab {

// One entry of a config file: {"experiment": kind, ...kind fields...}.
// A top-level {"experiments": [...]} wraps several. Field reference lives
// in the README; parsing throws ValidationError with the offending key.
struct RunOutcome {
  std::vector<std::string> summary_lines;           // one per experiment
  std::vector<std::filesystem::path> files_written;
};

RunOutcome run_experiments(const Json& config, const std::filesystem::path& out_dir,
                           int threads, std::optional<std::uint64_t> seed_override);

Json load_config_file(const std::filesystem::path& path);  // ValidationError on bad JSON

}  // namespace ergolab
