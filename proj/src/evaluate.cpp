#include "somkm/evaluate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "somkm/error.hpp"
#include "somkm/kernels.hpp"
#include "somkm/random.hpp"

namespace somkm {

Silhouette silhouette(const Matrix& data, std::span<const int> labels) {
    if (labels.size() != data.rows()) {
        throw Error(Errc::LengthMismatch, std::to_string(labels.size()) + " labels for " +
                                              std::to_string(data.rows()) + " rows");
    }
    std::vector<int> distinct(labels.begin(), labels.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2) {
        throw Error(Errc::InsufficientClusters, "silhouette needs at least 2 clusters, got " +
                                                    std::to_string(distinct.size()));
    }
    if (distinct.size() > data.rows() - 1) {
        throw Error(Errc::DegenerateClustering, std::to_string(distinct.size()) + " clusters for " +
                                                    std::to_string(data.rows()) + " points");
    }

    std::vector<int> compact(labels.size());
    std::vector<std::size_t> sizes(distinct.size(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto c = std::lower_bound(distinct.begin(), distinct.end(), labels[i]) - distinct.begin();
        compact[i] = static_cast<int>(c);
        ++sizes[static_cast<std::size_t>(c)];
    }

    Silhouette out;
    out.samples = kernels::parallel::silhouette_samples({data, compact, sizes});
    double acc = 0.0;
    for (double s : out.samples) {
        acc += s;
    }
    out.mean = acc / static_cast<double>(out.samples.size());
    return out;
}

void select_best(SilhouetteReport& report) {
    if (report.per_k.empty()) {
        throw Error(Errc::BadRange, "no feasible k in the sweep range");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < report.per_k.size(); ++i) {
        const auto& e = report.per_k[i];
        const auto& b = report.per_k[best];
        if (e.mean_silhouette > b.mean_silhouette || (e.mean_silhouette == b.mean_silhouette && e.k < b.k)) {
            best = i;
        }
    }
    report.best_k = report.per_k[best].k;
    report.best_score = report.per_k[best].mean_silhouette;
}

std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t k) noexcept {
    return mix_seed(base_seed, static_cast<std::uint64_t>(k));
}

SilhouetteReport sweep_k(const Matrix& data, std::size_t k_min, std::size_t k_max, const KMeansConfig& base) {
    if (k_min < 2 || k_min > k_max) {
        throw Error(Errc::BadRange, "sweep range [" + std::to_string(k_min) + ", " + std::to_string(k_max) +
                                        "] needs 2 <= k_min <= k_max");
    }
    if (data.rows() == 0) {
        throw Error(Errc::EmptyData, "sweep over zero rows");
    }

    const std::size_t count = k_max - k_min + 1;
    std::vector<std::optional<SweepEntry>> entries(count);
    std::vector<std::string> reasons(count);
    const auto n = data.rows();
    const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
        const auto slot = static_cast<std::size_t>(idx);
        const std::size_t k = k_min + slot;
        if (k > n - 1) {
            reasons[slot] = "k exceeds n - 1 (n = " + std::to_string(n) + ")";
            continue;
        }
        try {
            KMeansConfig cfg = base;
            cfg.k = k;
            cfg.seed = sweep_seed(base.seed, k);
            const KMeansModel model = fit_kmeans(data, cfg);
            const Silhouette s = silhouette(data, model.labels);
            entries[slot] = SweepEntry{k, s.mean, model.inertia};
        } catch (const Error& e) {
            reasons[slot] = e.what();
        }
    }

    SilhouetteReport report;
    for (std::size_t slot = 0; slot < count; ++slot) {
        if (entries[slot]) {
            report.per_k.push_back(*entries[slot]);
        } else {
            report.skipped.push_back({k_min + slot, reasons[slot]});
        }
    }
    select_best(report);
    return report;
}

double adjusted_rand_index(std::span<const int> labels_a, std::span<const int> labels_b) {
    if (labels_a.size() != labels_b.size()) {
        throw Error(Errc::LengthMismatch, "labelings of length " + std::to_string(labels_a.size()) + " and " +
                                              std::to_string(labels_b.size()));
    }
    const std::size_t n = labels_a.size();
    if (n < 2) {
        throw Error(Errc::LengthMismatch, "ARI needs at least 2 labelled points");
    }
    auto comb2 = [](double x) { return x * (x - 1.0) / 2.0; };

    std::map<std::pair<int, int>, std::size_t> table;
    std::map<int, std::size_t> rows;
    std::map<int, std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
        ++table[{labels_a[i], labels_b[i]}];
        ++rows[labels_a[i]];
        ++cols[labels_b[i]];
    }
    double index = 0.0;
    for (const auto& [cell, count] : table) {
        index += comb2(static_cast<double>(count));
    }
    double sum_a = 0.0;
    for (const auto& [label, count] : rows) {
        sum_a += comb2(static_cast<double>(count));
    }
    double sum_b = 0.0;
    for (const auto& [label, count] : cols) {
        sum_b += comb2(static_cast<double>(count));
    }
    const double expected = sum_a * sum_b / comb2(static_cast<double>(n));
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) {
        // Identical partitions have one cell per row and per column.
        const bool same = table.size() == rows.size() && table.size() == cols.size();
        return same ? 1.0 : 0.0;
    }
    return (index - expected) / (max_index - expected);
}

}  // namespace somkm
