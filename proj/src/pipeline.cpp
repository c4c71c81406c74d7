#include "somkm/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <set>

#include "somkm/error.hpp"
#include "somkm/random.hpp"

namespace somkm {

std::vector<std::size_t> even_split(std::size_t total, std::size_t n) {
    std::vector<std::size_t> out(n, n == 0 ? 0 : total / n);
    for (std::size_t i = 0; i < n && i < total % n; ++i) {
        ++out[i];
    }
    return out;
}

std::vector<std::size_t> PipelineConfig::clusters_per_month() const {
    std::size_t explicit_total = 0;
    std::size_t implicit = 0;
    for (const auto& m : months) {
        if (auto it = som_clusters_per_month.find(m); it != som_clusters_per_month.end()) {
            explicit_total += it->second;
        } else {
            ++implicit;
        }
    }
    const std::size_t remaining = som_total_clusters > explicit_total ? som_total_clusters - explicit_total : 0;
    const auto split = even_split(remaining, implicit);
    std::vector<std::size_t> out;
    std::size_t next = 0;
    for (const auto& m : months) {
        if (auto it = som_clusters_per_month.find(m); it != som_clusters_per_month.end()) {
            out.push_back(it->second);
        } else {
            out.push_back(split[next++]);
        }
    }
    return out;
}

SomConfig PipelineConfig::som_config_for(std::size_t month_index) const {
    const std::size_t nodes = clusters_per_month().at(month_index);
    SomConfig c = SomConfig::for_grid(1, nodes, derive_seed(seed, kSeedTagSom, month_index));
    c.epochs = som.epochs;
    c.lr_start = som.lr_start;
    c.lr_end = som.lr_end;
    if (som.sigma_start) {
        c.sigma_start = *som.sigma_start;
    }
    c.sigma_end = som.sigma_end;
    return c;
}

void PipelineConfig::validate() const {
    auto bad = [](const std::string& what) { return Error(Errc::InvalidConfig, what); };
    if (months.empty()) throw bad("months must not be empty");
    std::set<MonthKey> seen;
    for (const auto& m : months) {
        if (m.month < 1 || m.month > 12) throw bad("month out of range: " + m.to_string());
        if (!seen.insert(m).second) throw bad("month listed twice: " + m.to_string());
    }
    for (const auto& [m, n] : som_clusters_per_month) {
        if (!seen.count(m)) throw bad("som_clusters_per_month names unconfigured month " + m.to_string());
        if (n == 0) throw bad("som_clusters_per_month must be positive for " + m.to_string());
    }
    const auto counts = clusters_per_month();
    for (std::size_t i = 0; i < months.size(); ++i) {
        if (counts[i] == 0) {
            throw bad("som_total_clusters leaves " + months[i].to_string() + " without nodes");
        }
        som_config_for(i).validate();
    }
    if (pca_q < 1) throw bad("pca_q must be at least 1");
    if (k_min < 2) throw bad("k_min must be at least 2");
    if (k_max < k_min) throw bad("k_max must be >= k_min");
    KMeansConfig probe = kmeans;
    probe.k = k_min;
    probe.validate();
}

namespace {

struct MonthStage {
    bool used = false;
    ScalerParams scaler;
    Matrix normalized;
    SomModel som;
    CenterSet centers;
};

}  // namespace

PipelineResult run_pipeline(const ReadingTable& table, const PipelineConfig& config) {
    config.validate();

    PipelineResult result;
    result.config = config;
    result.warnings = table.warnings;

    // (1)
    const auto matrices = build_monthly_matrices(table, config.months);
    for (const auto& mm : matrices) {
        if (!mm.dropped.empty()) {
            result.warnings.push_back(mm.month.to_string() + ": dropped " + std::to_string(mm.dropped.size()) +
                                      " incomplete series (first: " + mm.dropped.front().series_id + " " +
                                      mm.dropped.front().reason + ")");
        }
        if (mm.values.rows() == 0) {
            result.warnings.push_back(mm.month.to_string() + ": no complete series, month skipped");
        }
    }
    if (std::all_of(matrices.begin(), matrices.end(), [](const MonthlyMatrix& m) { return m.values.rows() == 0; })) {
        throw Error(Errc::NoUsableSeries, "no series has complete days 1-28 in any requested month");
    }

    // (2)
    std::vector<MonthStage> stages(matrices.size());
    std::vector<std::exception_ptr> failures(matrices.size());
    const auto n_months = static_cast<std::ptrdiff_t>(matrices.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t mi = 0; mi < n_months; ++mi) {
        const auto i = static_cast<std::size_t>(mi);
        if (matrices[i].values.rows() == 0) {
            continue;
        }
        try {
            MonthStage& st = stages[i];
            st.scaler = fit_minmax(matrices[i].values);
            st.normalized = apply_minmax(matrices[i].values, st.scaler);
            st.som = train_som(st.normalized, config.som_config_for(i));
            st.centers = extract_centers(st.som, matrices[i].month);
            st.used = true;
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }

    // (3)
    result.pooled_centers.values = Matrix(0, kDaysPerMonth);
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& st = stages[i];
        if (!st.used) {
            continue;
        }
        result.scalers.push_back({matrices[i].month, st.scaler});
        result.som_models.push_back({matrices[i].month, st.som});
        result.warnings.insert(result.warnings.end(), st.centers.warnings.begin(), st.centers.warnings.end());
        for (std::size_t r = 0; r < st.centers.centers.rows(); ++r) {
            result.pooled_centers.values.append_row(st.centers.centers.row(r));
            result.pooled_centers.origin.push_back({matrices[i].month, st.centers.source_nodes[r]});
        }
    }
    const std::size_t pooled = result.pooled_centers.values.rows();
    if (pooled < config.k_min || pooled < 2) {
        throw Error(Errc::TooFewCenters, std::to_string(pooled) + " pooled centers, k_min = " +
                                             std::to_string(config.k_min));
    }

    // (4)
    result.pca = fit_pca(result.pooled_centers.values, config.pca_q);
    const Matrix projected_centers = project(result.pca, result.pooled_centers.values);

    // (5)
    KMeansConfig base = config.kmeans;
    base.seed = derive_seed(config.seed, kSeedTagKMeans, 0);
    result.report = sweep_k(projected_centers, config.k_min, config.k_max, base);
    for (const auto& skip : result.report.skipped) {
        result.warnings.push_back("sweep skipped k = " + std::to_string(skip.k) + ": " + skip.reason);
    }
    KMeansConfig final_cfg = base;
    final_cfg.k = result.report.best_k;
    final_cfg.seed = sweep_seed(base.seed, result.report.best_k);
    result.kmeans = fit_kmeans(projected_centers, final_cfg);

    // (6)
    Matrix all_scores(0, result.pca.n_components());
    for (std::size_t i = 0; i < stages.size(); ++i) {
        if (!stages[i].used) {
            continue;
        }
        const Matrix scores = project(result.pca, stages[i].normalized);
        for (std::size_t r = 0; r < scores.rows(); ++r) {
            all_scores.append_row(scores.row(r));
            const auto s = scores.row(r);
            result.assignments.push_back({matrices[i].series_ids[r], matrices[i].month, 0, {s.begin(), s.end()}});
        }
    }
    const auto labels = assign_labels(result.kmeans.centers, all_scores);
    for (std::size_t a = 0; a < labels.size(); ++a) {
        result.assignments[a].label = labels[a];
    }
    return result;
}

}  // namespace somkm
