#pragma once

#include <string>

#include "core/config.hpp"

namespace xlt {

// Batch commands. Each validates the configuration (reporting every problem
// at once), writes its output files under config.out_dir, and returns a JSON
// summary. All are pure functions of (config, input files, seeds, cache
// state) and safe to re-run.
std::string cmd_ingest(const RunConfig& config);
std::string cmd_prune(const RunConfig& config);
std::string cmd_translate(const RunConfig& config);
std::string cmd_trace(const RunConfig& config);
std::string cmd_eval(const RunConfig& config);
std::string cmd_compare(const RunConfig& config);

}  // namespace xlt
