#ifndef SOMKM_PIPELINE_HPP
#define SOMKM_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "somkm/evaluate.hpp"
#include "somkm/ingest.hpp"
#include "somkm/kmeans.hpp"
#include "somkm/pca.hpp"
#include "somkm/preprocess.hpp"
#include "somkm/som.hpp"

namespace somkm {

/// Stage tags for derive_seed(master, tag, index).
inline constexpr std::uint64_t kSeedTagSom = 1;     // index = position in config.months
inline constexpr std::uint64_t kSeedTagKMeans = 2;  // index = 0; sweep_seed() applies per k

/// First-stage cluster total and the k it led to on the 50-household London
/// smart-meter subset (mean silhouette 0.66). Informational only: the values
/// depend on that data set and are not checked anywhere.
inline constexpr std::size_t kReferenceSomClusters = 88;
inline constexpr std::size_t kReferenceBestK = 24;
inline constexpr double kReferenceSilhouette = 0.66;

/// SOM training schedule shared by every month; the grid is always 1 x k_m.
struct SomSchedule {
    std::size_t epochs = 200;
    double lr_start = 0.5;
    double lr_end = 0.01;
    std::optional<double> sigma_start;  ///< unset: max(1, k_m) / 2
    double sigma_end = 0.5;

    bool operator==(const SomSchedule&) const = default;
};

struct PipelineConfig {
    std::vector<MonthKey> months = default_months();
    /// Explicit per-month node counts. Months left out get an even split of som_total_clusters.
    std::map<MonthKey, std::size_t> som_clusters_per_month;
    std::size_t som_total_clusters = kReferenceSomClusters;
    SomSchedule som;
    std::size_t pca_q = 2;
    std::size_t k_min = 2;
    std::size_t k_max = 40;
    KMeansConfig kmeans;  ///< k and seed are set per fit
    std::uint64_t seed = 0;

    /// Node count for every configured month, in month order.
    std::vector<std::size_t> clusters_per_month() const;

    /// SOM configuration for the month at `month_index`.
    SomConfig som_config_for(std::size_t month_index) const;

    void validate() const;

    bool operator==(const PipelineConfig&) const = default;
};

/// total split over n slots as evenly as possible; the first total % n slots get one extra.
std::vector<std::size_t> even_split(std::size_t total, std::size_t n);

struct MonthScaler {
    MonthKey month;
    ScalerParams params;

    bool operator==(const MonthScaler&) const = default;
};

struct MonthSom {
    MonthKey month;
    SomModel model;

    bool operator==(const MonthSom&) const = default;
};

struct CenterOrigin {
    MonthKey month;
    std::size_t node = 0;

    bool operator==(const CenterOrigin&) const = default;
};

struct PooledCenters {
    Matrix values;  ///< rows in [0,1]^28, months in config order, nodes ascending
    std::vector<CenterOrigin> origin;

    bool operator==(const PooledCenters&) const = default;
};

struct Assignment {
    std::string series_id;
    MonthKey month;
    int label = 0;
    std::vector<double> projected;  ///< PCA scores the label was assigned from

    bool operator==(const Assignment&) const = default;
};

struct PipelineResult {
    PipelineConfig config;
    std::vector<MonthScaler> scalers;
    std::vector<MonthSom> som_models;
    PooledCenters pooled_centers;
    PcaModel pca;
    KMeansModel kmeans;
    SilhouetteReport report;
    std::vector<Assignment> assignments;
    std::vector<std::string> warnings;

    bool operator==(const PipelineResult&) const = default;
};

/**
 * Full two-stage clustering.
 *
 *  1. monthly matrices (days 1..28, incomplete series dropped per month)
 *  2. per month: MinMax fit+apply, SOM on a 1 x k_m strip, activated centers
 *  3. pool the centers of all months
 *  4. PCA on the pooled centers, project them
 *  5. silhouette sweep over [k_min, k_max]; refit k-means at best_k with the sweep's seed
 *  6. project every normalized series-month through the same PCA and label it
 *     with its nearest final center
 *
 * Months with no complete series are skipped with a warning. Stage 2 runs
 * months in parallel; every seed is derived up front from config.seed, so
 * the result does not depend on scheduling.
 */
PipelineResult run_pipeline(const ReadingTable& table, const PipelineConfig& config);

}  // namespace somkm

#endif
