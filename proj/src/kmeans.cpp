#include "somkm/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "somkm/error.hpp"
#include "somkm/kernels.hpp"
#include "somkm/random.hpp"

namespace somkm {

namespace {

double sum_in_order(const std::vector<double>& values) {
    double acc = 0.0;
    for (double v : values) {
        acc += v;
    }
    return acc;
}

// Means of the labelled rows; returns the ids of clusters left without members.
std::vector<std::size_t> update_means(const Matrix& data, const std::vector<int>& labels, Matrix& centers) {
    const std::size_t k = centers.rows();
    std::vector<std::size_t> counts(k, 0);
    Matrix sums(k, data.cols());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        ++counts[c];
        auto s = sums.row(c);
        const auto x = data.row(i);
        for (std::size_t j = 0; j < data.cols(); ++j) {
            s[j] += x[j];
        }
    }
    std::vector<std::size_t> empty;
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            empty.push_back(c);
            continue;
        }
        auto dst = centers.row(c);
        const auto s = sums.row(c);
        for (std::size_t j = 0; j < data.cols(); ++j) {
            dst[j] = s[j] / static_cast<double>(counts[c]);
        }
    }
    return empty;
}

void reseed_empty(const Matrix& data, Matrix& centers, const std::vector<std::size_t>& empty) {
    for (std::size_t c : empty) {
        const auto nearest = kernels::parallel::nearest_rows(data, centers);
        std::size_t far = 0;
        for (std::size_t i = 1; i < data.rows(); ++i) {
            if (nearest.sq_dist[i] > nearest.sq_dist[far]) {
                far = i;
            }
        }
        const auto src = data.row(far);
        std::copy(src.begin(), src.end(), centers.row(c).begin());
    }
}

void check_data(const Matrix& data, std::size_t k) {
    if (data.rows() == 0) {
        throw Error(Errc::EmptyData, "k-means on zero rows");
    }
    if (data.rows() < k) {
        throw Error(Errc::TooFewPoints, std::to_string(data.rows()) + " points for k = " + std::to_string(k));
    }
    for (double v : data.data()) {
        if (!std::isfinite(v)) {
            throw Error(Errc::NonFiniteValue, "k-means input contains a non-finite value");
        }
    }
}

}  // namespace

void KMeansConfig::validate() const {
    if (k < 1) throw Error(Errc::InvalidConfig, "kmeans: k must be at least 1");
    if (max_iters < 1) throw Error(Errc::InvalidConfig, "kmeans: max_iters must be at least 1");
    if (n_restarts < 1) throw Error(Errc::InvalidConfig, "kmeans: n_restarts must be at least 1");
}

std::vector<int> assign_labels(const Matrix& centers, const Matrix& points) {
    if (points.rows() == 0) {
        return {};
    }
    if (centers.cols() != points.cols()) {
        throw Error(Errc::DimensionMismatch, "points have " + std::to_string(points.cols()) + " columns, centers " +
                                                 std::to_string(centers.cols()));
    }
    if (centers.rows() == 0) {
        throw Error(Errc::EmptyData, "no centers to assign to");
    }
    return kernels::parallel::nearest_rows(points, centers).index;
}

double inertia(const Matrix& data, std::span<const int> labels, const Matrix& centers) {
    if (labels.size() != data.rows() || (data.rows() > 0 && data.cols() != centers.cols())) {
        throw Error(Errc::DimensionMismatch, "inertia: data, labels and centers disagree in shape");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= centers.rows()) {
            throw Error(Errc::LabelOutOfRange, "label " + std::to_string(labels[i]) + " at row " +
                                                   std::to_string(i) + " outside [0, " +
                                                   std::to_string(centers.rows()) + ")");
        }
        acc += kernels::squared_distance(data.row(i), centers.row(static_cast<std::size_t>(labels[i])));
    }
    return acc;
}

Matrix kmeans_plus_plus(const Matrix& data, std::size_t k, std::uint64_t seed) {
    check_data(data, k);
    const std::size_t n = data.rows();
    Rng rng(seed);
    Matrix centers(0, data.cols());
    centers.append_row(data.row(rng.index(n)));

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        d2[i] = kernels::squared_distance(data.row(i), centers.row(0));
    }
    while (centers.rows() < k) {
        const double total = sum_in_order(d2);
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double cum = 0.0;
            std::size_t last_positive = 0;
            bool found = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0) {
                    continue;
                }
                last_positive = i;
                cum += d2[i];
                if (cum > target) {
                    pick = i;
                    found = true;
                    break;
                }
            }
            if (!found) {
                pick = last_positive;
            }
        } else {
            pick = rng.index(n);
        }
        centers.append_row(data.row(pick));
        const auto c = centers.row(centers.rows() - 1);
        for (std::size_t i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], kernels::squared_distance(data.row(i), c));
        }
    }
    return centers;
}

LloydRun lloyd(const Matrix& data, Matrix centers, std::size_t max_iters) {
    if (centers.rows() == 0 || centers.cols() != data.cols()) {
        throw Error(Errc::DimensionMismatch, "initial centers do not match the data");
    }
    check_data(data, centers.rows());

    LloydRun run;
    auto nearest = kernels::parallel::nearest_rows(data, centers);
    run.inertia_trace.push_back(sum_in_order(nearest.sq_dist));

    std::size_t iterations = 0;
    bool converged = false;
    while (iterations < max_iters) {
        const auto empty = update_means(data, nearest.index, centers);
        if (!empty.empty()) {
            reseed_empty(data, centers, empty);
        }
        auto next = kernels::parallel::nearest_rows(data, centers);
        ++iterations;
        run.inertia_trace.push_back(sum_in_order(next.sq_dist));
        const bool same = next.index == nearest.index;
        nearest = std::move(next);
        if (same) {
            converged = true;
            break;
        }
    }

    run.model.centers = std::move(centers);
    run.model.labels = std::move(nearest.index);
    run.model.inertia = sum_in_order(nearest.sq_dist);
    run.model.iterations = iterations;
    run.model.converged = converged;
    return run;
}

KMeansModel fit_kmeans(const Matrix& data, const KMeansConfig& config) {
    config.validate();
    check_data(data, config.k);

    std::vector<KMeansModel> runs(config.n_restarts);
    const auto restarts = static_cast<std::ptrdiff_t>(config.n_restarts);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < restarts; ++r) {
        const auto seed = mix_seed(config.seed, static_cast<std::uint64_t>(r));
        runs[static_cast<std::size_t>(r)] = lloyd(data, kmeans_plus_plus(data, config.k, seed), config.max_iters).model;
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].inertia < runs[best].inertia) {
            best = r;
        }
    }
    return std::move(runs[best]);
}

}  // namespace somkm
