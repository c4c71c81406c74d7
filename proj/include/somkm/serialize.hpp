#ifndef SOMKM_SERIALIZE_HPP
#define SOMKM_SERIALIZE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "somkm/evaluate.hpp"
#include "somkm/ingest.hpp"
#include "somkm/pipeline.hpp"

/**
 * JSON documents written and read by the toolkit.
 *
 * Every double is written with 17 significant digits ("%.17g"), which
 * round-trips IEEE-754 binary64 exactly. Object keys keep a fixed order, so
 * equal inputs produce byte-identical files.
 */
namespace somkm {

inline constexpr std::string_view kFormatVersion = "1.0";

/// Pipeline configuration. Every key is optional; unknown keys raise InvalidConfig.
std::string config_to_json(const PipelineConfig& config);
PipelineConfig config_from_json(std::string_view text);
PipelineConfig load_config(const std::string& path);

/// Result file with top-level keys format_version, config, scalers, som_models,
/// pooled_centers, pca, kmeans, report, assignments, warnings.
std::string result_to_json(const PipelineResult& result);
/// Throws VersionMismatch for another format_version, CorruptFile for anything unparseable.
PipelineResult result_from_json(std::string_view text);
void save_result(const PipelineResult& result, const std::string& path);
PipelineResult load_result(const std::string& path);

std::string report_to_json(const SilhouetteReport& report);

/// Array of {series_id, year, month, label}.
std::string assignments_to_json(const std::vector<Assignment>& assignments);
/// Header `series_id,year,month,label`.
std::string assignments_to_csv(const std::vector<Assignment>& assignments);

/// Output of the `ingest` subcommand: per-month series, daily totals and drops.
std::string monthly_summary_to_json(const ReadingTable& table, const std::vector<MonthlyMatrix>& matrices);

}  // namespace somkm

#endif
