#ifndef SOMKM_SOM_HPP
#define SOMKM_SOM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "somkm/ingest.hpp"
#include "somkm/matrix.hpp"

namespace somkm {

struct SomConfig {
    std::size_t grid_rows = 1;
    std::size_t grid_cols = 1;
    std::size_t epochs = 200;
    double lr_start = 0.5;
    double lr_end = 0.01;
    double sigma_start = 0.5;
    double sigma_end = 0.5;
    std::uint64_t seed = 0;

    /// Default schedule for a grid: sigma decays from max(rows, cols) / 2 to 0.5.
    static SomConfig for_grid(std::size_t rows, std::size_t cols, std::uint64_t seed);

    std::size_t node_count() const noexcept { return grid_rows * grid_cols; }

    /// Throws InvalidConfig on any violated range.
    void validate() const;

    bool operator==(const SomConfig&) const = default;
};

struct SomModel {
    SomConfig config;
    Matrix codebook;  ///< node index = row * grid_cols + col
    std::vector<std::pair<int, int>> grid_coords;
    std::vector<std::size_t> activations;  ///< BMU hits of the training rows after training

    bool operator==(const SomModel&) const = default;
};

/// Learning rate and neighbourhood radius at global step fraction t in [0, 1).
double som_learning_rate(const SomConfig& config, double t) noexcept;
double som_radius(const SomConfig& config, double t) noexcept;

/**
 * Online SOM training.
 *
 * The codebook starts as rows drawn uniformly (with replacement) from the
 * data. Each epoch visits the rows in a fresh Fisher-Yates shuffle of
 * 0..n-1; every visit moves all nodes towards the row by
 * lr(t) * exp(-grid_dist^2 / (2 radius(t)^2)) with both schedules decaying
 * geometrically in t = step / (epochs * n). All randomness comes from one
 * Rng seeded with config.seed: first the n_nodes init draws, then the
 * shuffles in epoch order.
 */
SomModel train_som(const Matrix& data, const SomConfig& config);

std::size_t best_matching_unit(const SomModel& model, std::span<const double> x);

/// Mean Euclidean distance from each row to its BMU.
double quantization_error(const SomModel& model, const Matrix& data);

struct CenterSet {
    Matrix centers;
    std::vector<std::size_t> source_nodes;
    std::vector<std::size_t> activation;
    MonthKey month;
    std::size_t empty_nodes = 0;
    std::vector<std::string> warnings;
};

/// Codebook rows of every node with at least one hit, in node order.
CenterSet extract_centers(const SomModel& model, const MonthKey& month);

}  // namespace somkm

#endif
