#ifndef SOMKM_EVALUATE_HPP
#define SOMKM_EVALUATE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "somkm/kmeans.hpp"
#include "somkm/matrix.hpp"

namespace somkm {

struct Silhouette {
    double mean = 0.0;
    std::vector<double> samples;
};

/**
 * Exact O(n^2) silhouette with Euclidean distances. Label values are
 * arbitrary integers; only the partition they induce matters. Points in
 * singleton clusters score 0.
 */
Silhouette silhouette(const Matrix& data, std::span<const int> labels);

struct SweepEntry {
    std::size_t k = 0;
    double mean_silhouette = 0.0;
    double inertia = 0.0;

    bool operator==(const SweepEntry&) const = default;
};

struct SweepSkip {
    std::size_t k = 0;
    std::string reason;

    bool operator==(const SweepSkip&) const = default;
};

struct SilhouetteReport {
    std::vector<SweepEntry> per_k;  ///< ascending k
    std::size_t best_k = 0;
    double best_score = 0.0;
    std::vector<SweepSkip> skipped;

    bool operator==(const SilhouetteReport&) const = default;
};

/// Sets best_k / best_score to the highest-scoring entry, smallest k on ties. Throws BadRange if per_k is empty.
void select_best(SilhouetteReport& report);

/// Seed used for the fit at k during a sweep.
std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t k) noexcept;

/**
 * Fits k-means for every k in [k_min, k_max] (seed mix_seed(base.seed, k))
 * and scores each fit by mean silhouette. k > n - 1, or fits collapsing to
 * fewer than two distinct labels, are listed under `skipped`.
 */
SilhouetteReport sweep_k(const Matrix& data, std::size_t k_min, std::size_t k_max, const KMeansConfig& base);

/// Chance-corrected pair-counting agreement between two labelings.
double adjusted_rand_index(std::span<const int> labels_a, std::span<const int> labels_b);

}  // namespace somkm

#endif
