#include "permpat/entropy.hpp"
#include "permpat/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace permpat;

namespace {

JointDistribution uniform_binary_joint(int arity) {
    std::map<std::vector<int>, double> support;
    const double p = 1.0 / static_cast<double>(1 << arity);
    for (int a = 0; a < (1 << arity); ++a) {
        std::vector<int> tuple(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) tuple[static_cast<std::size_t>(i)] = (a >> i) & 1;
        support[tuple] = p;
    }
    return JointDistribution::from_entries(arity, std::move(support));
}

std::vector<std::vector<int>> two_subset_cover_of_three() { return {{1, 2}, {1, 3}, {2, 3}}; }

}  // namespace

TEST_SUITE_BEGIN("entropy");

TEST_CASE("entropy worked examples") {
    CHECK(entropy(FiniteDistribution::from_probs({1.0})) == 0.0);
    CHECK(entropy(FiniteDistribution::from_probs({0.0, 1.0, 0.0})) == 0.0);
    for (int m : {2, 5, 8}) {
        const auto uniform = FiniteDistribution::from_probs(
            std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
        CHECK(entropy(uniform) == doctest::Approx(std::log(m)).epsilon(1e-12));
    }
    CHECK(entropy(FiniteDistribution::from_probs({0.5, 0.25, 0.25})) ==
          doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("distributions validate") {
    CHECK_THROWS_AS(FiniteDistribution::from_probs({0.5, 0.6}), InvalidInputError);
    CHECK_THROWS_AS(FiniteDistribution::from_probs({-0.1, 1.1}), InvalidInputError);
}

TEST_CASE("boundedness: uniform is tight, non-uniform strict") {
    const auto uniform = FiniteDistribution::from_probs({0.25, 0.25, 0.25, 0.25});
    const auto tight = boundedness_check(uniform);
    CHECK(tight.holds);
    CHECK(std::abs(tight.slack) <= 1e-12);

    const auto skewed = boundedness_check(FiniteDistribution::from_probs({0.5, 0.3, 0.2}));
    CHECK(skewed.holds);
    CHECK(skewed.slack > 1e-3);
}

TEST_CASE("boundedness holds on random distributions") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10'000; ++trial) {
        const auto report = boundedness_check(random_distribution(rng, 8));
        CHECK(report.holds);
        CHECK(report.slack >= -1e-12);
    }
}

TEST_CASE("marginalization consistency") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto joint = random_joint_binary(rng, 4);
        const auto ab = marginal(joint, {1, 3, 4});
        const auto direct = marginal(joint, {1, 4});
        const auto chained = marginal(ab, {1, 3});  // coordinates renumber after projection
        REQUIRE(chained.support.size() == direct.support.size());
        for (const auto& [tuple, p] : direct.support) {
            CHECK(chained.support.at(tuple) == doctest::Approx(p).epsilon(1e-12));
        }
    }
}

TEST_CASE("shearer worked examples") {
    // independent coordinates, singleton cover: equality
    std::map<std::vector<int>, double> independent;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) independent[{a, b}] = 0.25;
    }
    const auto j2 = JointDistribution::from_entries(2, std::move(independent));
    const auto singleton = shearer_check(j2, {{1}, {2}}, 1);
    CHECK(singleton.holds);
    CHECK(std::abs(singleton.slack) <= 1e-12);

    // uniform on {0,1}^3 with the 2-subset cover: 2 * 3 log 2 = 3 * 2 log 2
    const auto report = shearer_check(uniform_binary_joint(3), two_subset_cover_of_three(), 2);
    CHECK(report.holds);
    CHECK(report.lhs == doctest::Approx(2 * 3 * std::log(2.0)).epsilon(1e-12));
    CHECK(std::abs(report.slack) <= 1e-12);

    // point mass: both sides zero
    std::map<std::vector<int>, double> point{{{0, 0, 0}, 1.0}};
    const auto degenerate =
        shearer_check(JointDistribution::from_entries(3, std::move(point)),
                      two_subset_cover_of_three(), 2);
    CHECK(degenerate.lhs == 0.0);
    CHECK(degenerate.rhs == 0.0);
    CHECK(degenerate.holds);
}

TEST_CASE("shearer names undercovered coordinates") {
    CHECK_THROWS_WITH_AS(shearer_check(uniform_binary_joint(3), {{1, 2}, {1, 3}}, 2),
                         doctest::Contains("coordinate 2"), PreconditionError);
    CHECK_THROWS_AS(shearer_check(uniform_binary_joint(2), {{1, 5}}, 1), InvalidInputError);
}

TEST_CASE("shearer holds on random joints") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto report =
            shearer_check(random_joint_binary(rng, 3), two_subset_cover_of_three(), 2);
        CHECK(report.holds);
        CHECK(report.slack >= -1e-12);
    }
}

TEST_SUITE_END();
