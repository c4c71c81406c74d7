#include "somkm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

namespace somkm::kernels {

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

std::size_t nearest_row(const Matrix& centers, std::span<const double> x, double* best_sq_dist) noexcept {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < centers.rows(); ++k) {
        const double d = squared_distance(centers.row(k), x);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    if (best_sq_dist != nullptr) {
        *best_sq_dist = best_d;
    }
    return best;
}

namespace {

// Silhouette value for one point; shared by both variants so the arithmetic is identical.
double silhouette_one(const SilhouetteInput& in, std::size_t i, std::vector<double>& sums) {
    std::fill(sums.begin(), sums.end(), 0.0);
    const auto xi = in.data.row(i);
    for (std::size_t j = 0; j < in.data.rows(); ++j) {
        if (j == i) {
            continue;
        }
        sums[static_cast<std::size_t>(in.labels[j])] += std::sqrt(squared_distance(xi, in.data.row(j)));
    }
    const auto own = static_cast<std::size_t>(in.labels[i]);
    if (in.sizes[own] <= 1) {
        return 0.0;
    }
    const double a = sums[own] / static_cast<double>(in.sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < sums.size(); ++c) {
        if (c == own || in.sizes[c] == 0) {
            continue;
        }
        b = std::min(b, sums[c] / static_cast<double>(in.sizes[c]));
    }
    const double denom = std::max(a, b);
    // Coincident clusters give a = b = 0.
    if (!(denom > 0.0) || !std::isfinite(b)) {
        return 0.0;
    }
    return (b - a) / denom;
}

}  // namespace

namespace serial {

NearestResult nearest_rows(const Matrix& points, const Matrix& centers) {
    NearestResult out{std::vector<int>(points.rows()), std::vector<double>(points.rows())};
    for (std::size_t i = 0; i < points.rows(); ++i) {
        out.index[i] = static_cast<int>(nearest_row(centers, points.row(i), &out.sq_dist[i]));
    }
    return out;
}

std::vector<double> silhouette_samples(const SilhouetteInput& in) {
    std::vector<double> out(in.data.rows());
    std::vector<double> sums(in.sizes.size());
    for (std::size_t i = 0; i < in.data.rows(); ++i) {
        out[i] = silhouette_one(in, i, sums);
    }
    return out;
}

}  // namespace serial

namespace parallel {

NearestResult nearest_rows(const Matrix& points, const Matrix& centers) {
    NearestResult out{std::vector<int>(points.rows()), std::vector<double>(points.rows())};
    const auto n = static_cast<std::ptrdiff_t>(points.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto r = static_cast<std::size_t>(i);
        out.index[r] = static_cast<int>(nearest_row(centers, points.row(r), &out.sq_dist[r]));
    }
    return out;
}

std::vector<double> silhouette_samples(const SilhouetteInput& in) {
    std::vector<double> out(in.data.rows());
    const auto n = static_cast<std::ptrdiff_t>(in.data.rows());
#pragma omp parallel
    {
        std::vector<double> sums(in.sizes.size());
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            out[static_cast<std::size_t>(i)] = silhouette_one(in, static_cast<std::size_t>(i), sums);
        }
    }
    return out;
}

}  // namespace parallel

int max_threads() noexcept { return omp_get_max_threads(); }

}  // namespace somkm::kernels
