#include <doctest.h>

#include <cstring>

#include "oracles.hpp"
#include "somkm/kernels.hpp"

using namespace somkm;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("nearest_row breaks ties towards the lowest index") {
    Matrix centers{{0, 0}, {1, 1}};
    const std::vector<double> mid{0.5, 0.5};
    CHECK(kernels::nearest_row(centers, mid) == 0);
    const std::vector<double> near1{0.9, 1.0};
    double d2 = -1;
    CHECK(kernels::nearest_row(centers, near1, &d2) == 1);
    CHECK(d2 == doctest::Approx(0.01));
}

TEST_CASE("parallel kernels match the serial reference bit for bit") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 50 + rng.index(400);
        const std::size_t d = 1 + rng.index(6);
        const std::size_t k = 2 + rng.index(9);
        const Matrix points = Matrix::from_rows(oracle::random_rows(rng, n, d, 10.0));
        const Matrix centers = Matrix::from_rows(oracle::random_rows(rng, k, d, 10.0));

        const auto s = kernels::serial::nearest_rows(points, centers);
        const auto p = kernels::parallel::nearest_rows(points, centers);
        CHECK(s.index == p.index);
        CHECK(bit_equal(s.sq_dist, p.sq_dist));

        std::vector<std::size_t> sizes(k, 0);
        for (int l : s.index) ++sizes[static_cast<std::size_t>(l)];
        const kernels::SilhouetteInput in{points, s.index, sizes};
        CHECK(bit_equal(kernels::serial::silhouette_samples(in), kernels::parallel::silhouette_samples(in)));
    }
}
