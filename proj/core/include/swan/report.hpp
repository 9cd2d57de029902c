#pragma once

#include <string>
#include <vector>

#include <swan/harness.hpp>

namespace swan {

enum class OutputFormat { Csv, Json };

// "csv" or "json"; anything else throws ConfigError.
OutputFormat parse_format(const std::string& name);

// Shortest decimal text that round-trips the value; '.' separator,
// locale-independent.
std::string format_double(double v);

// Sibling aggregate file: "<stem>_summary<ext>".
std::string summary_path_for(const std::string& path);

// Writes one row per successful trial to `path` (CSV columns exactly:
// trial,seed,method,M,N_RF,K,P_dBm,sum_rate_bpshz,ee_bpshz_per_w,iterations,
// wall_ms) and the per-scenario aggregates to the sibling summary file.
// UTF-8, LF line endings. Returns the summary path. Throws IoError when a
// path cannot be written.
std::string emit_results(const std::vector<ScenarioResults>& results, const std::string& path,
                         OutputFormat format);

}  // namespace swan
