#include "somkm/som.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "somkm/error.hpp"
#include "somkm/kernels.hpp"
#include "somkm/random.hpp"

namespace somkm {

SomConfig SomConfig::for_grid(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    SomConfig c;
    c.grid_rows = rows;
    c.grid_cols = cols;
    c.sigma_start = std::max(0.5, static_cast<double>(std::max(rows, cols)) / 2.0);
    c.sigma_end = 0.5;
    c.seed = seed;
    return c;
}

void SomConfig::validate() const {
    auto bad = [](const std::string& what) { return Error(Errc::InvalidConfig, "som: " + what); };
    if (grid_rows == 0 || grid_cols == 0) throw bad("grid must have at least one node");
    if (epochs == 0) throw bad("epochs must be positive");
    if (!(lr_start > 0.0 && lr_start <= 1.0)) throw bad("lr_start must lie in (0, 1]");
    if (!(lr_end > 0.0 && lr_end <= lr_start)) throw bad("lr_end must lie in (0, lr_start]");
    if (!(sigma_start > 0.0 && std::isfinite(sigma_start))) throw bad("sigma_start must be positive");
    if (!(sigma_end > 0.0 && sigma_end <= sigma_start)) throw bad("sigma_end must lie in (0, sigma_start]");
}

double som_learning_rate(const SomConfig& config, double t) noexcept {
    return config.lr_start * std::pow(config.lr_end / config.lr_start, t);
}

double som_radius(const SomConfig& config, double t) noexcept {
    return config.sigma_start * std::pow(config.sigma_end / config.sigma_start, t);
}

SomModel train_som(const Matrix& data, const SomConfig& config) {
    config.validate();
    if (data.rows() == 0 || data.cols() == 0) {
        throw Error(Errc::EmptyData, "SOM training needs at least one row and one column");
    }
    for (double v : data.data()) {
        if (!std::isfinite(v)) {
            throw Error(Errc::NonFiniteValue, "SOM training data contains a non-finite value");
        }
    }

    const std::size_t n = data.rows();
    const std::size_t dim = data.cols();
    const std::size_t nodes = config.node_count();

    SomModel model;
    model.config = config;
    model.grid_coords.reserve(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
        model.grid_coords.emplace_back(static_cast<int>(k / config.grid_cols), static_cast<int>(k % config.grid_cols));
    }

    Rng rng(config.seed);
    model.codebook = Matrix(nodes, dim);
    for (std::size_t k = 0; k < nodes; ++k) {
        const auto src = data.row(rng.index(n));
        std::copy(src.begin(), src.end(), model.codebook.row(k).begin());
    }

    // Squared grid distances between every pair of nodes.
    std::vector<double> grid_d2(nodes * nodes);
    for (std::size_t a = 0; a < nodes; ++a) {
        for (std::size_t b = 0; b < nodes; ++b) {
            const double dr = model.grid_coords[a].first - model.grid_coords[b].first;
            const double dc = model.grid_coords[a].second - model.grid_coords[b].second;
            grid_d2[a * nodes + b] = dr * dr + dc * dc;
        }
    }

    const double total_steps = static_cast<double>(config.epochs) * static_cast<double>(n);
    std::vector<std::size_t> order(n);
    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = n - 1; i > 0; --i) {
            std::swap(order[i], order[rng.index(i + 1)]);
        }
        for (std::size_t idx : order) {
            const double t = static_cast<double>(step) / total_steps;
            const double lr = som_learning_rate(config, t);
            const double radius = som_radius(config, t);
            const double two_r2 = 2.0 * radius * radius;
            const auto x = data.row(idx);
            const std::size_t bmu = kernels::nearest_row(model.codebook, x);
            for (std::size_t k = 0; k < nodes; ++k) {
                const double coeff = lr * std::exp(-grid_d2[k * nodes + bmu] / two_r2);
                auto w = model.codebook.row(k);
                for (std::size_t j = 0; j < dim; ++j) {
                    w[j] += coeff * (x[j] - w[j]);
                }
            }
            ++step;
        }
    }

    model.activations.assign(nodes, 0);
    const auto hits = kernels::parallel::nearest_rows(data, model.codebook);
    for (int b : hits.index) {
        ++model.activations[static_cast<std::size_t>(b)];
    }
    return model;
}

std::size_t best_matching_unit(const SomModel& model, std::span<const double> x) {
    if (x.size() != model.codebook.cols()) {
        throw Error(Errc::DimensionMismatch, "vector of length " + std::to_string(x.size()) +
                                                 " against codebook of dimension " +
                                                 std::to_string(model.codebook.cols()));
    }
    return kernels::nearest_row(model.codebook, x);
}

double quantization_error(const SomModel& model, const Matrix& data) {
    if (data.rows() == 0) {
        throw Error(Errc::EmptyData, "quantization error of zero rows");
    }
    if (data.cols() != model.codebook.cols()) {
        throw Error(Errc::DimensionMismatch, "data dimension " + std::to_string(data.cols()) +
                                                 " != codebook dimension " + std::to_string(model.codebook.cols()));
    }
    const auto hits = kernels::parallel::nearest_rows(data, model.codebook);
    double sum = 0.0;
    for (double d2 : hits.sq_dist) {
        sum += std::sqrt(d2);
    }
    return sum / static_cast<double>(data.rows());
}

CenterSet extract_centers(const SomModel& model, const MonthKey& month) {
    CenterSet out;
    out.month = month;
    out.centers = Matrix(0, model.codebook.cols());
    for (std::size_t k = 0; k < model.activations.size(); ++k) {
        if (model.activations[k] == 0) {
            ++out.empty_nodes;
            continue;
        }
        out.centers.append_row(model.codebook.row(k));
        out.source_nodes.push_back(k);
        out.activation.push_back(model.activations[k]);
    }
    if (out.source_nodes.empty()) {
        throw Error(Errc::AllNodesEmpty, "no SOM node was activated for " + month.to_string());
    }
    if (out.empty_nodes > 0) {
        out.warnings.push_back(month.to_string() + ": " + std::to_string(out.empty_nodes) +
                               (out.empty_nodes == 1 ? " empty node" : " empty nodes"));
    }
    return out;
}

}  // namespace somkm
