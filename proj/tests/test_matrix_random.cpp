#include <doctest.h>

#include <set>

#include "somkm/error.hpp"
#include "somkm/matrix.hpp"
#include "somkm/random.hpp"

using namespace somkm;

TEST_CASE("matrix rows and shape") {
    Matrix m{{1, 2, 3}, {4, 5, 6}};
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(1, 2) == 6);
    m.row(0)[1] = 9;
    CHECK(m(0, 1) == 9);
    CHECK(m.to_rows() == std::vector<std::vector<double>>{{1, 9, 3}, {4, 5, 6}});

    Matrix fixed(0, 3);
    CHECK_THROWS_AS(fixed.append_row(std::vector<double>{1, 2}), Error);
    fixed.append_row(std::vector<double>{1, 2, 3});
    CHECK(fixed.rows() == 1);
}

TEST_CASE("rng draws are reproducible and in range") {
    Rng a(7), b(7), c(8);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double u = a.uniform01();
        CHECK(u == b.uniform01());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        differs |= u != c.uniform01();
    }
    CHECK(differs);

    Rng r(1);
    std::set<std::size_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto x = r.index(5);
        CHECK(x < 5);
        seen.insert(x);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("normal draws have roughly unit moments") {
    Rng r(99);
    double sum = 0, sq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("seed mixing separates streams") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 100; ++i) {
        seeds.insert(mix_seed(42, i));
        seeds.insert(derive_seed(42, 1, i));
        seeds.insert(derive_seed(42, 2, i));
    }
    CHECK(seeds.size() == 300);
    CHECK(mix_seed(1, 2) == mix_seed(1, 2));
}
