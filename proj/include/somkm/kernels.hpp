#ifndef SOMKM_KERNELS_HPP
#define SOMKM_KERNELS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "somkm/matrix.hpp"

/**
 * Hot loops shared by the SOM, k-means and silhouette code.
 *
 * Each kernel exists twice: `serial::` is the plain reference loop and
 * `parallel::` distributes rows across OpenMP threads. Per-row results are
 * computed with identical arithmetic in both, and nothing is reduced across
 * threads, so the two agree bit for bit regardless of thread count. The
 * serial versions stay in the library for tests and the benchmark.
 *
 * Inputs are not validated here; callers check shapes.
 */
namespace somkm::kernels {

/// Sum of squared coordinate differences, accumulated in index order.
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Index of the nearest row of `centers` to `x`; ties go to the lowest index.
std::size_t nearest_row(const Matrix& centers, std::span<const double> x, double* best_sq_dist = nullptr) noexcept;

struct NearestResult {
    std::vector<int> index;
    std::vector<double> sq_dist;
};

/**
 * Silhouette inputs: labels must be compact ids in [0, n_labels) and
 * `sizes[c]` the member count of cluster c.
 */
struct SilhouetteInput {
    const Matrix& data;
    std::span<const int> labels;
    std::span<const std::size_t> sizes;
};

namespace serial {
NearestResult nearest_rows(const Matrix& points, const Matrix& centers);
std::vector<double> silhouette_samples(const SilhouetteInput& in);
}  // namespace serial

namespace parallel {
NearestResult nearest_rows(const Matrix& points, const Matrix& centers);
std::vector<double> silhouette_samples(const SilhouetteInput& in);
}  // namespace parallel

/// Number of threads the parallel kernels will use.
int max_threads() noexcept;

}  // namespace somkm::kernels

#endif
