#ifndef SOMKM_KMEANS_HPP
#define SOMKM_KMEANS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "somkm/matrix.hpp"

namespace somkm {

struct KMeansConfig {
    std::size_t k = 2;
    std::size_t max_iters = 300;
    std::size_t n_restarts = 10;
    std::uint64_t seed = 0;

    void validate() const;

    bool operator==(const KMeansConfig&) const = default;
};

struct KMeansModel {
    Matrix centers;
    double inertia = 0.0;  ///< WSS of the training data under `labels`
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<int> labels;  ///< nearest-center assignment of the training rows

    bool operator==(const KMeansModel&) const = default;
};

/// Nearest center per point (squared Euclidean, ties to the lowest index).
std::vector<int> assign_labels(const Matrix& centers, const Matrix& points);

/// Sum of squared distances from each point to the center named by its label.
double inertia(const Matrix& data, std::span<const int> labels, const Matrix& centers);

/**
 * k-means++ seeding: the first center is a uniform row, each further one a
 * row drawn with probability proportional to its squared distance from the
 * nearest center already chosen (uniform if all distances are zero).
 */
Matrix kmeans_plus_plus(const Matrix& data, std::size_t k, std::uint64_t seed);

struct LloydRun {
    KMeansModel model;
    std::vector<double> inertia_trace;  ///< WSS after the initial and every subsequent assignment
};

/**
 * Lloyd iterations from the given centers. One iteration is a mean update
 * followed by a reassignment; it stops once the assignment repeats or after
 * max_iters iterations. An emptied cluster is moved onto the point farthest
 * from its nearest center (lowest row on ties).
 */
LloydRun lloyd(const Matrix& data, Matrix centers, std::size_t max_iters);

/// Best of config.n_restarts seeded k-means++/Lloyd runs; restart r uses mix_seed(config.seed, r).
KMeansModel fit_kmeans(const Matrix& data, const KMeansConfig& config);

}  // namespace somkm

#endif
