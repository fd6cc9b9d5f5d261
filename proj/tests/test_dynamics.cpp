#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tbell/dynamics.hpp"

using namespace tbell;

namespace {

constexpr double pi = std::numbers::pi;

TwoLevelState random_state(std::mt19937_64& rng, bool unit = true) {
    std::normal_distribution<double> n;
    TwoLevelState s{{n(rng), n(rng)}, {n(rng), n(rng)}};
    const double norm = std::sqrt(s.norm_squared());
    const double scale = unit ? 1.0 / norm : std::uniform_real_distribution<double>(0.05, 1.0)(rng) / norm;
    s.c_plus *= scale;
    s.c_minus *= scale;
    return s;
}

bool close(const TwoLevelState& a, const TwoLevelState& b, double tol) {
    return std::abs(a.c_plus - b.c_plus) <= tol && std::abs(a.c_minus - b.c_minus) <= tol;
}

}  // namespace

TEST_CASE("DynamicsParams rejects non-positive or non-finite omega") {
    CHECK_THROWS_AS(DynamicsParams(0.0), std::invalid_argument);
    CHECK_THROWS_AS(DynamicsParams(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(DynamicsParams(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(DynamicsParams{std::numeric_limits<double>::infinity()}, std::invalid_argument);
    CHECK(DynamicsParams(2.0).period() == doctest::Approx(pi));
}

TEST_CASE("initial_state") {
    const DynamicsParams p(1.5);
    const auto s0 = initial_state({0.3}, 0.3, p);
    CHECK(s0.c_plus.real() == 1.0);
    CHECK(s0.c_minus.real() == 0.0);

    const auto quarter = initial_state({0.0}, (pi / 2) / 1.5, p);
    CHECK(std::abs(quarter.c_plus) < 1e-15);
    CHECK(quarter.c_minus.real() == doctest::Approx(1.0).epsilon(1e-15));

    const auto eighth = initial_state({0.0}, (pi / 4) / 1.5, p);
    CHECK(std::abs(eighth.c_plus.real() - std::sqrt(2.0) / 2) < 1e-15);
    CHECK(std::abs(eighth.c_minus.real() - std::sqrt(2.0) / 2) < 1e-15);
    CHECK(std::abs(expectation_q(eighth)) < 1e-15);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const auto s = initial_state({u(rng)}, u(rng), p);
        CHECK(std::abs(s.norm_squared() - 1.0) <= kKernelTolerance);
    }
}

TEST_CASE("initial_state is invariant under shifting t' by a period") {
    const DynamicsParams p(0.8);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double tp = u(rng);
        const double t0 = u(rng);
        const auto a = initial_state({tp}, t0, p);
        const auto b = initial_state({tp + p.period()}, t0, p);
        CHECK(close(a, b, kKernelTolerance));
        CHECK(std::abs(expectation_q(a) - expectation_q(b)) <= kKernelTolerance);
    }
}

TEST_CASE("propagate examples") {
    const DynamicsParams p(1.0);
    std::mt19937_64 rng(3);
    const auto s = random_state(rng);
    CHECK(propagate(s, 0.0, p) == s);

    const auto down = propagate(TwoLevelState::plus(), pi / 2, p);
    CHECK(std::abs(down.c_plus) < 1e-15);
    CHECK(down.c_minus.real() == doctest::Approx(1.0));

    const auto revived = propagate(TwoLevelState::plus(), pi, p);
    CHECK(revived.c_plus.real() == doctest::Approx(-1.0));
    CHECK(std::abs(revived.c_minus) < 1e-15);
    CHECK(expectation_q(revived) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("propagate matches the rotation matrix elements") {
    const DynamicsParams p(2.3);
    for (double t : {0.1, 0.7, 1.9, -0.4}) {
        const auto from_plus = propagate(TwoLevelState::plus(), t, p);
        const auto from_minus = propagate(TwoLevelState::minus(), t, p);
        CHECK(std::abs(from_plus.c_plus - std::cos(2.3 * t)) < 1e-15);   // <+|U|+>
        CHECK(std::abs(from_plus.c_minus - std::sin(2.3 * t)) < 1e-15);  // <-|U|+>
        CHECK(std::abs(from_minus.c_plus + std::sin(2.3 * t)) < 1e-15);  // <+|U|->
        CHECK(std::abs(from_minus.c_minus - std::cos(2.3 * t)) < 1e-15); // <-|U|->
    }
}

TEST_CASE("propagate properties: unitarity, group law, revival") {
    const DynamicsParams p(1.7);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 2000; ++i) {
        const auto s = random_state(rng, i % 2 == 0);
        const double a = u(rng);
        const double b = u(rng);
        const auto once = propagate(s, a + b, p);
        const auto twice = propagate(propagate(s, a, p), b, p);
        CHECK(std::abs(once.norm_squared() - s.norm_squared()) <= kKernelTolerance);
        CHECK(close(once, twice, kKernelTolerance));

        const auto r = propagate(s, pi / p.omega(), p);
        CHECK(std::abs(expectation_q(r) - expectation_q(s)) <= kKernelTolerance);
        const bool same = close(r, s, 1e-12);
        TwoLevelState neg{-s.c_plus, -s.c_minus};
        CHECK((same || close(r, neg, 1e-12)));
    }
}

TEST_CASE("expectation_q and born_probability") {
    CHECK(expectation_q(TwoLevelState::plus()) == 1.0);
    const double h = std::sqrt(2.0) / 2;
    CHECK(std::abs(expectation_q({{h, 0}, {h, 0}})) < 1e-15);
    CHECK(born_probability({{h, 0}, {h, 0}}, Outcome::minus) == doctest::Approx(0.5));
    CHECK(born_probability(TwoLevelState::plus(), Outcome::plus) == 1.0);

    const DynamicsParams p(1.0);
    const auto sixth = initial_state({0.0}, pi / 6, p);
    CHECK(expectation_q(sixth) == doctest::Approx(0.5).epsilon(1e-14));
    const auto third = initial_state({0.0}, pi / 3, p);
    CHECK(born_probability(third, Outcome::plus) == doctest::Approx(0.25).epsilon(1e-14));

    // Unnormalized input is normalized on read.
    CHECK(expectation_q({{0.3, 0}, {0.0, 0}}) == 1.0);

    CHECK_THROWS_WITH_AS(expectation_q(TwoLevelState::zero()), "degenerate state", std::domain_error);
    CHECK_THROWS_WITH_AS(born_probability(TwoLevelState::zero(), Outcome::plus), "degenerate state",
                         std::domain_error);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        const auto s = random_state(rng, false);
        CHECK(std::abs(born_probability(s, Outcome::plus) + born_probability(s, Outcome::minus) - 1.0) <=
              kKernelTolerance);
    }
}

TEST_CASE("collapse") {
    CHECK(collapse(TwoLevelState::plus(), Outcome::plus) == TwoLevelState::plus());
    CHECK(collapse(TwoLevelState::plus(), Outcome::minus) == TwoLevelState::zero());
    const double h = std::sqrt(2.0) / 2;
    const auto c = collapse({{h, 0}, {h, 0}}, Outcome::plus);
    CHECK(c.c_plus.real() == h);
    CHECK(c.c_minus == std::complex<double>{});
    CHECK(c.norm_squared() == doctest::Approx(0.5));

    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_state(rng, i % 3 != 0);
        for (const Outcome q : kOutcomes) {
            const auto once = collapse(s, q);
            CHECK(collapse(once, q) == once);
            CHECK(std::abs(once.norm_squared() - born_probability(s, q) * s.norm_squared()) <= kKernelTolerance);
        }
    }
}

TEST_CASE("free evolution reproduces Q(t) = cos 2w(t - t')") {
    const DynamicsParams p(1.3);
    const double tp = 0.37;
    for (int k = 0; k <= 1000; ++k) {
        const double t = tp - 10.0 + 20.0 * k / 1000.0;
        const auto s = propagate(initial_state({tp}, tp, p), t - tp, p);
        CHECK(std::abs(expectation_q(s) - std::cos(2.0 * 1.3 * (t - tp))) <= kKernelTolerance);
    }
}

TEST_CASE("measured_trajectory examples") {
    const DynamicsParams p(1.0);
    const std::vector<double> t1{0.0};
    const std::vector<Outcome> plus1{Outcome::plus};
    const auto single = measured_trajectory({0.0}, t1, plus1, p);
    REQUIRE(single.records.size() == 1);
    CHECK(single.records[0].pre_probability == 1.0);
    CHECK(single.records[0].disturbance == 0.0);
    CHECK(single.final_state.norm_squared() == 1.0);
    CHECK(trajectory_product(single.records, single.final_state) == 1.0);

    const std::vector<double> t2{0.0, pi / 4};
    const std::vector<Outcome> pp{Outcome::plus, Outcome::plus};
    const std::vector<Outcome> pm{Outcome::plus, Outcome::minus};
    const auto a = measured_trajectory({0.0}, t2, pp, p);
    CHECK(a.final_state.norm_squared() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(trajectory_product(a.records, a.final_state) == doctest::Approx(0.5).epsilon(1e-14));
    const auto b = measured_trajectory({0.0}, t2, pm, p);
    CHECK(trajectory_product(b.records, b.final_state) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("measured_trajectory errors and the zero state") {
    const DynamicsParams p(1.0);
    const std::vector<double> unsorted{1.0, 0.5};
    const std::vector<Outcome> two{Outcome::plus, Outcome::plus};
    CHECK_THROWS_WITH_AS(measured_trajectory({0.0}, unsorted, two, p), "times not ascending", std::invalid_argument);
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(measured_trajectory({0.0}, one, two, p), std::invalid_argument);
    CHECK_THROWS_AS(measured_trajectory({0.0}, std::vector<double>{}, std::vector<Outcome>{}, p),
                    std::invalid_argument);

    // |+> at t' measured as - at once: impossible; the zero state carries on.
    const std::vector<double> times{0.0, 0.3, 0.9};
    const std::vector<Outcome> qs{Outcome::minus, Outcome::plus, Outcome::minus};
    const auto traj = measured_trajectory({0.0}, times, qs, p);
    CHECK(traj.records[0].pre_probability == 0.0);
    CHECK(traj.records[1].pre_probability == 0.0);
    CHECK(traj.records[2].pre_probability == 0.0);
    CHECK(traj.records[2].disturbance == 1.0);
    CHECK(traj.final_state.norm_squared() == 0.0);
}

TEST_CASE("measured_trajectory: record invariants, chain rule and completeness") {
    const DynamicsParams p(0.9);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int n = 1; n <= 10; ++n) {
        std::vector<double> times(static_cast<std::size_t>(n));
        double t = u(rng);
        for (auto& ti : times) {
            ti = t;
            t += 0.05 + u(rng);
        }
        const InitialPhase phase{u(rng) - 1.5};
        double total = 0.0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<Outcome> qs;
            for (int i = 0; i < n; ++i) {
                qs.push_back((mask >> i) & 1u ? Outcome::minus : Outcome::plus);
            }
            const auto traj = measured_trajectory(phase, times, qs, p);
            double chain = 1.0;
            for (const auto& r : traj.records) {
                CHECK(r.pre_probability >= 0.0);
                CHECK(r.pre_probability <= 1.0);
                CHECK(std::abs(r.disturbance - (1.0 - r.pre_probability)) <= kKernelTolerance);
                chain *= r.pre_probability;
            }
            CHECK(std::abs(traj.final_state.norm_squared() - chain) <= kKernelTolerance);
            CHECK(traj.final_state.norm_squared() <= 1.0 + kKernelTolerance);
            total += traj.final_state.norm_squared();
        }
        CHECK(std::abs(total - 1.0) <= 1e-9);
    }
}
