#include <doctest.h>

#include "oracles.hpp"
#include "somkm/error.hpp"
#include "somkm/preprocess.hpp"

using namespace somkm;

TEST_CASE("fit_minmax examples") {
    const auto p = fit_minmax(Matrix{{2, 3}, {4, 3}, {6, 3}});
    CHECK(p.mins == std::vector<double>{2, 3});
    CHECK(p.maxs == std::vector<double>{6, 3});
    CHECK_THROWS_AS(fit_minmax(Matrix(0, 2)), Error);
}

TEST_CASE("apply_minmax examples") {
    const ScalerParams p{{2, 3}, {6, 3}};
    const auto out = apply_minmax(Matrix{{2, 3}, {4, 3}, {6, 3}, {8, 3}}, p);
    CHECK(out(0, 0) == 0.0);
    CHECK(out(1, 0) == 0.5);
    CHECK(out(2, 0) == 1.0);
    CHECK(out(3, 0) == 1.5);  // no clamping
    for (std::size_t i = 0; i < 4; ++i) CHECK(out(i, 1) == 0.0);
    CHECK_THROWS_AS(apply_minmax(Matrix{{1, 2, 3}}, p), Error);
}

TEST_CASE("invert_minmax examples") {
    const ScalerParams p{{2, 3}, {6, 3}};
    const auto back = invert_minmax(Matrix{{0, 0.7}, {1, -2}}, p);
    CHECK(back(0, 0) == 2.0);
    CHECK(back(1, 0) == 6.0);
    CHECK(back(0, 1) == 3.0);
    CHECK(back(1, 1) == 3.0);
    CHECK_THROWS_AS(invert_minmax(Matrix{{1}}, p), Error);
}

TEST_CASE("minmax properties on random matrices") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.index(40);
        const std::size_t d = 1 + rng.index(8);
        auto rows = oracle::random_rows(rng, n, d, 100.0);
        if (trial % 5 == 0) {
            for (auto& r : rows) r[0] = 7.5;  // one degenerate column
        }
        const Matrix x = Matrix::from_rows(rows);
        const auto p = fit_minmax(x);
        const auto y = apply_minmax(x, p);
        for (std::size_t j = 0; j < d; ++j) {
            const bool degenerate = p.mins[j] == p.maxs[j];
            double lo = 1e300, hi = -1e300;
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(y(i, j) >= 0.0);
                CHECK(y(i, j) <= 1.0);
                lo = std::min(lo, y(i, j));
                hi = std::max(hi, y(i, j));
                for (std::size_t k = 0; k < n; ++k) {
                    if (x(i, j) < x(k, j)) CHECK(y(i, j) <= y(k, j));
                }
            }
            if (!degenerate) {
                CHECK(lo == 0.0);
                CHECK(hi == 1.0);
            }
        }
        const auto back = invert_minmax(y, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) CHECK(std::abs(back(i, j) - x(i, j)) <= 1e-12 * std::max(1.0, std::abs(x(i, j))));
        // invert then apply on arbitrary unit-range values
        const Matrix u = Matrix::from_rows(oracle::random_rows(rng, n, d));
        const auto uu = apply_minmax(invert_minmax(u, p), p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (p.mins[j] != p.maxs[j]) CHECK(std::abs(uu(i, j) - u(i, j)) <= 1e-12);
    }
}
