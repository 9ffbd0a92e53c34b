#pragma once

#include <filesystem>
#include <vector>

#include "run_config.hpp"

namespace selfright::cli {

using Paths = std::vector<std::filesystem::path>;

// Each command validates the config, computes, and writes its files into
// `out_dir` (created if needed). Returns the files written; throws on any
// failure, in which case some outputs may be missing.
Paths run_gait(const RunConfig& config, const std::filesystem::path& out_dir);
Paths run_energy(const RunConfig& config, const std::filesystem::path& out_dir);
Paths run_simulate(const RunConfig& config, const std::filesystem::path& out_dir);
Paths run_sweep(const RunConfig& config, const std::filesystem::path& out_dir,
                int threads = 0);
Paths run_sidewind(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace selfright::cli
