#include <doctest.h>

#include "oracles.hpp"
#include "somkm/error.hpp"
#include "somkm/som.hpp"

using namespace somkm;

namespace {

SomConfig strip(std::size_t nodes, std::size_t epochs, std::uint64_t seed) {
    SomConfig c = SomConfig::for_grid(1, nodes, seed);
    c.epochs = epochs;
    return c;
}

SomModel model_from(const Matrix& codebook, std::vector<std::size_t> activations = {}) {
    SomModel m;
    m.config = strip(codebook.rows(), 1, 0);
    m.codebook = codebook;
    for (std::size_t k = 0; k < codebook.rows(); ++k) m.grid_coords.emplace_back(0, static_cast<int>(k));
    m.activations = activations.empty() ? std::vector<std::size_t>(codebook.rows(), 1) : activations;
    return m;
}

}  // namespace

TEST_CASE("SomConfig validation") {
    CHECK_NOTHROW(SomConfig{}.validate());
    auto c = SomConfig{};
    c.lr_end = 0.9;
    CHECK_THROWS_AS(c.validate(), Error);
    c = SomConfig{};
    c.sigma_end = 1.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = SomConfig{};
    c.grid_cols = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = SomConfig{};
    c.lr_start = 1.5;
    c.lr_end = 0.1;
    CHECK_THROWS_AS(c.validate(), Error);
    CHECK(SomConfig::for_grid(1, 7, 0).sigma_start == 3.5);
    CHECK(SomConfig::for_grid(1, 1, 0).sigma_start == 0.5);
}

TEST_CASE("two far-apart rows on a 1x2 strip") {
    std::vector<double> zeros(28, 0.0), ones(28, 1.0);
    Matrix x(0, 28);
    x.append_row(zeros);
    x.append_row(ones);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        // Default schedule: the update sequence must match the scalar replay exactly.
        const auto wide = strip(2, 50, seed);
        const auto replay = oracle::som_replay(x.to_rows(), 2, 50, wide.lr_start, wide.lr_end, wide.sigma_start,
                                               wide.sigma_end, seed);
        CHECK(train_som(x, wide).codebook.to_rows() == replay);

        // With a neighbourhood of 0.25 grid units the two nodes barely pull on
        // each other (h = exp(-8)) and each settles onto its own row.
        auto narrow = wide;
        narrow.sigma_start = 0.25;
        narrow.sigma_end = 0.25;
        const auto model = train_som(x, narrow);
        CHECK(model.codebook.to_rows() == oracle::som_replay(x.to_rows(), 2, 50, narrow.lr_start, narrow.lr_end,
                                                              0.25, 0.25, seed));

        std::vector<std::size_t> owner(2);
        for (std::size_t k = 0; k < 2; ++k) {
            const auto w = model.codebook.to_rows()[k];
            owner[k] = oracle::euclid(w, zeros) < oracle::euclid(w, ones) ? 0 : 1;
            double worst = 0.0;
            for (double v : w) worst = std::max(worst, std::abs(v - (owner[k] == 0 ? 0.0 : 1.0)));
            CHECK(worst <= 0.05);
        }
        CHECK(owner[0] != owner[1]);
        CHECK(model.activations == std::vector<std::size_t>{1, 1});
    }
}

TEST_CASE("1x1 grid follows the plain recurrence and does not raise quantization error") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix x = Matrix::from_rows(oracle::random_rows(rng, 5 + rng.index(30), 4));
        const auto cfg = strip(1, 20, 100 + static_cast<std::uint64_t>(trial));
        const auto model = train_som(x, cfg);

        // w <- w + lr(t) (x_t - w), same draws as training
        Rng replay(cfg.seed);
        const auto start = replay.index(x.rows());
        std::vector<double> w(x.row(start).begin(), x.row(start).end());
        const double total = static_cast<double>(cfg.epochs * x.rows());
        std::size_t step = 0;
        for (std::size_t e = 0; e < cfg.epochs; ++e) {
            std::vector<std::size_t> order(x.rows());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[replay.index(i + 1)]);
            for (auto idx : order) {
                const double lr = cfg.lr_start * std::pow(cfg.lr_end / cfg.lr_start, static_cast<double>(step++) / total);
                for (std::size_t j = 0; j < w.size(); ++j) w[j] += lr * (x(idx, j) - w[j]);
            }
        }
        CHECK(std::vector<double>(model.codebook.row(0).begin(), model.codebook.row(0).end()) == w);

        SomModel initial = model;
        initial.codebook = Matrix(0, 4);
        initial.codebook.append_row(x.row(start));
        CHECK(quantization_error(model, x) <= quantization_error(initial, x));
    }
}

TEST_CASE("training is deterministic, stays in the unit cube and counts every row") {
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix x = Matrix::from_rows(oracle::random_rows(rng, 10 + rng.index(60), 6));
        SomConfig cfg = SomConfig::for_grid(1 + rng.index(3), 1 + rng.index(4), rng.index(1000));
        cfg.epochs = 30;
        const auto a = train_som(x, cfg);
        const auto b = train_som(x, cfg);
        CHECK(a == b);
        for (double v : a.codebook.data()) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        std::size_t total = 0;
        for (auto h : a.activations) total += h;
        CHECK(total == x.rows());

        if (cfg.node_count() == 1 || cfg.grid_rows == 1) {
            const auto replay = oracle::som_replay(x.to_rows(), cfg.node_count(), cfg.epochs, cfg.lr_start, cfg.lr_end,
                                                   cfg.sigma_start, cfg.sigma_end, cfg.seed);
            CHECK(a.codebook.to_rows() == replay);
        }
    }
}

TEST_CASE("train_som rejects empty data and bad configs") {
    CHECK_THROWS_AS(train_som(Matrix(0, 3), SomConfig{}), Error);
    SomConfig bad;
    bad.epochs = 0;
    CHECK_THROWS_AS(train_som(Matrix{{0.5}}, bad), Error);
}

TEST_CASE("best_matching_unit examples") {
    const auto m = model_from(Matrix{{0, 0}, {1, 1}});
    CHECK(best_matching_unit(m, std::vector<double>{0.1, 0}) == 0);
    CHECK(best_matching_unit(m, std::vector<double>{0.5, 0.5}) == 0);
    CHECK(best_matching_unit(model_from(Matrix{{3, 3}}), std::vector<double>{9, -2}) == 0);
    CHECK_THROWS_AS(best_matching_unit(m, std::vector<double>{1, 2, 3}), Error);
}

TEST_CASE("quantization_error examples") {
    CHECK(quantization_error(model_from(Matrix{{0, 0}, {1, 1}}), Matrix{{0, 0}, {1, 1}}) == 0.0);
    CHECK(quantization_error(model_from(Matrix{{0, 0}}), Matrix{{3, 4}}) == 5.0);
    CHECK(quantization_error(model_from(Matrix{{0, 0}}), Matrix{{0, 1}, {0, 3}}) == 2.0);
    CHECK_THROWS_AS(quantization_error(model_from(Matrix{{0, 0}}), Matrix(0, 2)), Error);
}

TEST_CASE("extract_centers examples") {
    const MonthKey jan{2012, 1};
    const auto full = extract_centers(model_from(Matrix{{0, 0}, {1, 1}, {2, 2}}, {2, 1, 4}), jan);
    CHECK(full.centers == Matrix{{0, 0}, {1, 1}, {2, 2}});
    CHECK(full.source_nodes == std::vector<std::size_t>{0, 1, 2});
    CHECK(full.warnings.empty());
    CHECK(full.month == jan);

    const auto gap = extract_centers(model_from(Matrix{{0, 0}, {1, 1}, {2, 2}}, {2, 0, 4}), jan);
    CHECK(gap.centers == Matrix{{0, 0}, {2, 2}});
    CHECK(gap.source_nodes == std::vector<std::size_t>{0, 2});
    CHECK(gap.empty_nodes == 1);
    REQUIRE(gap.warnings.size() == 1);
    CHECK(gap.warnings[0].find("1 empty node") != std::string::npos);

    const auto aligned = extract_centers(model_from(Matrix{{0}, {1}}, {5, 3}), jan);
    CHECK(aligned.activation == std::vector<std::size_t>{5, 3});
    CHECK(aligned.source_nodes == std::vector<std::size_t>{0, 1});

    CHECK_THROWS_AS(extract_centers(model_from(Matrix{{0}, {1}}, {0, 0}), jan), Error);
}
