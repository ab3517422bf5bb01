#ifndef FOUREXT_RUNNER_HPP
#define FOUREXT_RUNNER_HPP

#include <string>
#include <vector>

#include "fourext/config.hpp"
#include "fourext/experiments.hpp"

namespace fourext {

/// Writes records.csv (RFC 4180, floats with 17 significant digits, columns:
/// inputs alphabetical, then measured, then bounds, then passed flags, then
/// runtime_ms). Throws IoError with the path on failure.
void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records);

/// Renders the plain-text summary: campaign name, totals, worst
/// measured/bound ratio, and any failure notes.
std::string render_summary(const std::string& campaign,
                           const std::vector<ExperimentRecord>& records);

/// Runs the campaign and writes <output>/records.csv and <output>/summary.txt.
/// Returns 0 exactly when every bound comparison passed, 1 otherwise.
/// Throws IoError / ValidationError for environment and late-stage
/// constraint failures.
int run_campaign(const CampaignConfig& config, bool quiet = false);

}  // namespace fourext

#endif
