#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "tbell/numerics.hpp"
#include "tbell/parallel.hpp"

using namespace tbell;

TEST_CASE("golden_section_maximize") {
    const auto ext = numerics::golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, -1.0, 2.0, 1e-10);
    CHECK(std::abs(ext.x - 0.3) < 1e-7);
    CHECK(ext.value <= 0.0);

    const double pi = std::numbers::pi;
    const auto c = numerics::golden_section_maximize([](double x) { return std::cos(x); }, -1.0, 0.5, 1e-12);
    CHECK(std::abs(c.x) < 1e-7);
    CHECK(std::abs(c.value - 1.0) < 1e-14);
    // Maximum on the bracket edge.
    const auto edge = numerics::golden_section_maximize([](double x) { return x; }, 0.0, pi, 1e-10);
    CHECK(std::abs(edge.x - pi) < 1e-9);
}

TEST_CASE("bisect_root and bisect_flip") {
    CHECK(std::abs(numerics::bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14) - std::sqrt(2.0)) < 1e-13);
    CHECK(numerics::bisect_root([](double x) { return x - 1.0; }, 1.0, 3.0, 1e-12) == 1.0);
    CHECK(numerics::bisect_root([](double x) { return 1.0 - x; }, 0.0, 1.0, 1e-12) == 1.0);
    CHECK_THROWS_AS(numerics::bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), std::invalid_argument);

    const double flip = numerics::bisect_flip([](double x) { return x >= 0.25; }, 0.0, 1.0, 1e-15);
    CHECK(std::abs(flip - 0.25) < 1e-14);
    CHECK_THROWS_AS(numerics::bisect_flip([](double) { return true; }, 0.0, 1.0, 1e-9), std::invalid_argument);
}

TEST_CASE("parallel_for visits every index once, for any worker count") {
    for (int threads : {1, 2, 3, 8}) {
        std::vector<int> hits(101, 0);
        parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits) {
            CHECK(h == 1);
        }
    }
    CHECK_THROWS_AS(parallel_for(10, 4, [](std::size_t i) { if (i == 7) throw std::runtime_error("boom"); }),
                    std::runtime_error);
    CHECK(configured_threads() >= 1);
}
