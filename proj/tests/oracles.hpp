// Independent reference computations used only by the tests. Nothing here
// calls into the kernels or algorithm code it is used to check.
#ifndef SOMKM_TESTS_ORACLES_HPP
#define SOMKM_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <vector>

#include "somkm/matrix.hpp"
#include "somkm/random.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s);
}

/// Textbook silhouette: full distance matrix, per-cluster member lists.
inline double silhouette_mean(const Rows& x, const std::vector<int>& labels) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = euclid(x[i], x[j]);

    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < n; ++i) members[labels[i]].push_back(i);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& own = members[labels[i]];
        if (own.size() == 1) continue;  // s = 0
        double a = 0.0;
        for (auto j : own) a += dist[i][j];
        a /= static_cast<double>(own.size() - 1);
        double b = std::numeric_limits<double>::infinity();
        for (const auto& [lab, idx] : members) {
            if (lab == labels[i]) continue;
            double m = 0.0;
            for (auto j : idx) m += dist[i][j];
            b = std::min(b, m / static_cast<double>(idx.size()));
        }
        const double d = std::max(a, b);
        total += d > 0.0 ? (b - a) / d : 0.0;
    }
    return total / static_cast<double>(n);
}

/// Within-cluster sum of squares of a labelling, centers recomputed as means.
inline double wss_of_partition(const Rows& x, const std::vector<int>& labels, int k) {
    const std::size_t d = x.front().size();
    std::vector<std::vector<double>> mean(static_cast<std::size_t>(k), std::vector<double>(d, 0.0));
    std::vector<double> count(static_cast<std::size_t>(k), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        count[c] += 1.0;
        for (std::size_t j = 0; j < d; ++j) mean[c][j] += x[i][j];
    }
    for (std::size_t c = 0; c < mean.size(); ++c)
        for (double& v : mean[c]) v = count[c] > 0 ? v / count[c] : 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = euclid(x[i], mean[static_cast<std::size_t>(labels[i])]);
        s += e * e;
    }
    return s;
}

struct BruteForce2 {
    double best_wss;
    std::vector<int> best_labels;
    int n_optimal;  // partitions attaining best_wss (up to 1e-12), counted once per label swap pair
};

/// Exhaustive search over all 2^n two-cluster labellings with both clusters non-empty.
inline BruteForce2 brute_force_two_means(const Rows& x) {
    const std::size_t n = x.size();
    BruteForce2 out{std::numeric_limits<double>::infinity(), {}, 0};
    std::vector<double> all;
    std::vector<std::vector<int>> labellings;
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        if (mask & 1u) continue;  // fix point 0 in cluster 0: each partition once
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = (mask >> i) & 1u;
        const double w = wss_of_partition(x, labels, 2);
        all.push_back(w);
        labellings.push_back(labels);
        if (w < out.best_wss) {
            out.best_wss = w;
            out.best_labels = labels;
        }
    }
    for (double w : all)
        if (w <= out.best_wss + 1e-12) ++out.n_optimal;
    return out;
}

/// Eigenvalues of [[a, b], [b, c]], descending.
inline std::vector<double> eig2(double a, double b, double c) {
    const double m = 0.5 * (a + c);
    const double r = std::hypot(0.5 * (a - c), b);
    return {m + r, m - r};
}

/// Eigenvalues of a symmetric 3x3 matrix by the trigonometric characteristic-polynomial solution, descending.
inline std::vector<double> eig3(const std::vector<std::vector<double>>& A) {
    const double p1 = A[0][1] * A[0][1] + A[0][2] * A[0][2] + A[1][2] * A[1][2];
    const double q = (A[0][0] + A[1][1] + A[2][2]) / 3.0;
    if (p1 == 0.0) {
        std::vector<double> d{A[0][0], A[1][1], A[2][2]};
        std::sort(d.rbegin(), d.rend());
        return d;
    }
    const double p2 = (A[0][0] - q) * (A[0][0] - q) + (A[1][1] - q) * (A[1][1] - q) + (A[2][2] - q) * (A[2][2] - q) +
                      2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    double B[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B[i][j] = (A[i][j] - (i == j ? q : 0.0)) / p;
    const double detB = B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) -
                        B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
                        B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
    const double r = std::clamp(detB / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    std::vector<double> d{e1, e2, e3};
    std::sort(d.rbegin(), d.rend());
    return d;
}

/**
 * Scalar replay of the online SOM schedule on a 1 x nodes strip: same seeded
 * draws (init picks, then one Fisher-Yates shuffle per epoch), update
 * w += lr * h * (x - w) written out longhand.
 */
inline Rows som_replay(const Rows& data, std::size_t nodes, std::size_t epochs, double lr0, double lr1, double s0,
                       double s1, std::uint64_t seed) {
    somkm::Rng rng(seed);
    const std::size_t n = data.size();
    const std::size_t d = data.front().size();
    Rows w;
    for (std::size_t k = 0; k < nodes; ++k) w.push_back(data[rng.index(n)]);
    const double total = static_cast<double>(epochs * n);
    std::size_t step = 0;
    for (std::size_t e = 0; e < epochs; ++e) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);
        for (std::size_t idx : order) {
            const double t = static_cast<double>(step) / total;
            const double lr = lr0 * std::pow(lr1 / lr0, t);
            const double sigma = s0 * std::pow(s1 / s0, t);
            const auto& x = data[idx];
            std::size_t bmu = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < nodes; ++k) {
                double dd = 0.0;
                for (std::size_t j = 0; j < d; ++j) dd += (x[j] - w[k][j]) * (x[j] - w[k][j]);
                if (dd < best) {
                    best = dd;
                    bmu = k;
                }
            }
            for (std::size_t k = 0; k < nodes; ++k) {
                const double g = static_cast<double>(k) - static_cast<double>(bmu);
                const double h = std::exp(-(g * g) / (2.0 * sigma * sigma));
                for (std::size_t j = 0; j < d; ++j) w[k][j] += lr * h * (x[j] - w[k][j]);
            }
            ++step;
        }
    }
    return w;
}

inline Rows random_rows(somkm::Rng& rng, std::size_t n, std::size_t d, double scale = 1.0) {
    Rows x(n, std::vector<double>(d));
    for (auto& r : x)
        for (double& v : r) v = scale * rng.uniform01();
    return x;
}

}  // namespace oracle

#endif
