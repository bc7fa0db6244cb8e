#include "permpat/errors.hpp"
#include "permpat/measure.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace permpat;

namespace {

SubsetMeasure half_measure(int n) { return SubsetMeasure::bernoulli(n, Rational(1, 2)); }

// random up-set indicator on P(n): union of principal filters
std::map<SubsetMask, Rational> random_increasing_indicator(std::mt19937_64& rng, int n) {
    const SubsetMask full = (SubsetMask{1} << n) - 1;
    std::vector<SubsetMask> seeds;
    const int k = 1 + static_cast<int>(uniform_below(rng, 3));
    for (int i = 0; i < k; ++i) seeds.push_back(static_cast<SubsetMask>(uniform_below(rng, full + 1ull)));
    std::map<SubsetMask, Rational> g;
    for (SubsetMask a = 0;; ++a) {
        bool in_upset = false;
        for (const SubsetMask s : seeds) {
            if ((s & ~a) == 0) in_upset = true;
        }
        g[a] = in_upset ? 1 : 0;
        if (a == full) break;
    }
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("measure");

TEST_CASE("bernoulli mass formula") {
    const auto uniform = half_measure(3);
    for (SubsetMask a = 0; a < 8; ++a) CHECK(uniform.mass(a) == Rational(1, 8));

    const auto m = SubsetMeasure::bernoulli(2, Rational(1, 4));
    CHECK(m.mass(0b01) == Rational(3, 16));
    CHECK(m.mass(0b00) == Rational(9, 16));
    CHECK(m.mass(0b11) == Rational(1, 16));
}

TEST_CASE("bernoulli mass sums to one") {
    for (int n = 0; n <= 10; ++n) {
        const auto m = SubsetMeasure::bernoulli(n, Rational(3, 7));
        Rational total = 0;
        for (std::uint64_t a = 0; a < (1ull << n); ++a) total += m.mass(static_cast<SubsetMask>(a));
        CHECK(total == 1);
    }
}

TEST_CASE("explicit tables validate") {
    std::map<SubsetMask, Rational> ok{{0b00, Rational(1, 2)}, {0b11, Rational(1, 2)}};
    CHECK_NOTHROW(SubsetMeasure::from_table(2, std::move(ok)));

    std::map<SubsetMask, Rational> short_mass{{0b00, Rational(1, 2)}};
    CHECK_THROWS_AS(SubsetMeasure::from_table(2, std::move(short_mass)), InvalidInputError);

    std::map<SubsetMask, Rational> negative{{0b00, Rational(3, 2)}, {0b01, Rational(-1, 2)}};
    CHECK_THROWS_AS(SubsetMeasure::from_table(2, std::move(negative)), InvalidInputError);

    std::map<SubsetMask, Rational> outside{{0b100, Rational(1)}};
    CHECK_THROWS_AS(SubsetMeasure::from_table(2, std::move(outside)), InvalidInputError);
}

TEST_CASE("nu worked examples") {
    const auto m4 = half_measure(4);
    CHECK(nu_exact(m4, std::vector<SubsetMask>{}) == 1);

    // single blocker of size d: nu = 1 - p^d
    for (int d = 1; d <= 4; ++d) {
        const SubsetMask blocker = (SubsetMask{1} << d) - 1;
        CHECK(nu_exact(m4, std::vector<SubsetMask>{blocker}) ==
              1 - rational_pow(Rational(1, 2), static_cast<std::uint64_t>(d)));
    }

    // {1,2} and {3,4}: 1 - 2/4 + 1/16
    const std::vector<SubsetMask> blockers{0b0011, 0b1100};
    CHECK(nu_exact(m4, blockers) == Rational(9, 16));
    CHECK(nu_exact(m4, blockers, NuMethod::enumeration) == Rational(9, 16));
    CHECK(nu_exact(m4, blockers, NuMethod::inclusion_exclusion) == Rational(9, 16));
}

TEST_CASE("nu routes agree on random blocker families") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(uniform_below(rng, 6));  // 3..8
        const auto m = SubsetMeasure::bernoulli(n, Rational(1 + uniform_below(rng, 9), 10));
        std::vector<SubsetMask> blockers;
        const int count = static_cast<int>(uniform_below(rng, 7));
        for (int i = 0; i < count; ++i) {
            blockers.push_back(static_cast<SubsetMask>(uniform_below(rng, 1ull << n)));
        }
        const Rational by_enum = nu_exact(m, blockers, NuMethod::enumeration);
        const Rational by_ie = nu_exact(m, blockers, NuMethod::inclusion_exclusion);
        CHECK(by_enum == by_ie);
        const double fv = nu_value(m, blockers);
        CHECK(fv == doctest::Approx(to_double(by_enum)).epsilon(1e-12));
    }
}

TEST_CASE("nu is antitone in the blocker family") {
    const auto m = SubsetMeasure::bernoulli(5, Rational(2, 5));
    std::vector<SubsetMask> blockers;
    Rational last = nu_exact(m, blockers);
    for (const SubsetMask extra : {0b00011u, 0b10100u, 0b00110u, 0b01000u}) {
        blockers.push_back(extra);
        const Rational next = nu_exact(m, blockers);
        CHECK(next <= last);
        last = next;
    }
}

TEST_CASE("tail mass") {
    const auto m3 = half_measure(3);
    CHECK(tail_mass_exact(m3, 2) == Rational(1, 2));
    CHECK(tail_mass_exact(m3, 0) == 0);
    CHECK(tail_mass_exact(m3, 4) == 1);

    const auto m6 = SubsetMeasure::bernoulli(6, Rational(3, 10));
    // enumeration oracle
    Rational direct = 0;
    for (std::uint64_t a = 0; a < 64; ++a) {
        if (std::popcount(a) < 3) direct += m6.mass(static_cast<SubsetMask>(a));
    }
    CHECK(tail_mass_exact(m6, 3) == direct);
    CHECK(tail_mass_value(m6, 3) == doctest::Approx(to_double(direct)).epsilon(1e-12));

    Rational prev = 0;
    for (int d = 0; d <= 7; ++d) {
        const Rational t = tail_mass_exact(m6, d);
        CHECK(t >= prev);
        prev = t;
    }
    CHECK(prev == 1);
    CHECK_THROWS_AS(tail_mass_exact(m6, 8), InvalidInputError);
}

TEST_CASE("log-supermodularity verdicts") {
    for (const auto& p : {Rational(1, 2), Rational(1, 5), Rational(9, 10)}) {
        CHECK(is_log_supermodular(SubsetMeasure::bernoulli(6, p)).ok);
    }

    std::map<SubsetMask, Rational> bad{{0b00, Rational(1, 10)},
                                       {0b01, Rational(2, 5)},
                                       {0b10, Rational(2, 5)},
                                       {0b11, Rational(1, 10)}};
    const auto report = is_log_supermodular(SubsetMeasure::from_table(2, std::move(bad)));
    REQUIRE_FALSE(report.ok);
    CHECK(report.violation == std::make_pair(SubsetMask{0b01}, SubsetMask{0b10}));

    // any measure concentrated on a chain is log-supermodular with equality
    std::map<SubsetMask, Rational> chain{{0b000, Rational(1, 4)},
                                         {0b001, Rational(1, 4)},
                                         {0b011, Rational(1, 4)},
                                         {0b111, Rational(1, 4)}};
    CHECK(is_log_supermodular(SubsetMeasure::from_table(3, std::move(chain))).ok);

    CHECK_THROWS_AS(is_log_supermodular(SubsetMeasure::bernoulli(12, Rational(1, 2))),
                    CapacityError);
}

TEST_CASE("fkg worked examples") {
    // single function: equality, slack 0
    std::vector<SubsetMask> elems;
    for (SubsetMask a = 0; a < 16; ++a) elems.push_back(a);
    const auto m = half_measure(4);
    std::map<SubsetMask, Rational> mu;
    for (const SubsetMask a : elems) mu[a] = m.mass(a);

    std::mt19937_64 rng(3);
    FkgCheckInput one;
    one.elements = elems;
    one.mu = mu;
    one.functions = {random_increasing_indicator(rng, 4)};
    one.direction = MonotoneDirection::increasing;
    const auto single = fkg_check(one);
    CHECK(single.holds == Verdict::holds);
    CHECK(single.slack_log == 0.0);

    // all-ones family: both sides 1
    std::map<SubsetMask, Rational> ones;
    for (const SubsetMask a : elems) ones[a] = 1;
    FkgCheckInput constant;
    constant.elements = elems;
    constant.mu = mu;
    constant.functions = {ones, ones};
    const auto trivial = fkg_check(constant);
    CHECK(trivial.holds == Verdict::holds);
    CHECK(*trivial.lhs_exact == "1");
    CHECK(*trivial.rhs_exact == "1");
}

TEST_CASE("fkg holds on random monotone 0/1 families") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<SubsetMask> elems;
        for (SubsetMask a = 0; a < 16; ++a) elems.push_back(a);
        FkgCheckInput input;
        input.elements = std::move(elems);
        const auto m = half_measure(4);
        for (SubsetMask a = 0; a < 16; ++a) input.mu[a] = m.mass(a);
        const int family = 2 + static_cast<int>(uniform_below(rng, 3));
        for (int i = 0; i < family; ++i) {
            input.functions.push_back(random_increasing_indicator(rng, 4));
        }
        const auto report = fkg_check(input);
        CHECK(report.holds == Verdict::holds);
    }
}

TEST_CASE("fkg rejects bad preconditions by name") {
    std::vector<SubsetMask> elems{0b00, 0b01, 0b10, 0b11};
    const auto m = half_measure(2);
    std::map<SubsetMask, Rational> mu;
    for (const SubsetMask a : elems) mu[a] = m.mass(a);

    // non-monotone function
    FkgCheckInput bad_fn;
    bad_fn.elements = elems;
    bad_fn.mu = mu;
    bad_fn.functions = {{{0b00, Rational(1)}, {0b01, Rational(0)}, {0b10, Rational(1)}, {0b11, Rational(1)}}};
    CHECK_THROWS_WITH_AS(fkg_check(bad_fn),
                         doctest::Contains("function 0 is not increasing"), PreconditionError);

    // non-log-supermodular measure
    FkgCheckInput bad_mu;
    bad_mu.elements = elems;
    bad_mu.mu = {{0b00, Rational(1, 10)},
                 {0b01, Rational(2, 5)},
                 {0b10, Rational(2, 5)},
                 {0b11, Rational(1, 10)}};
    bad_mu.functions = {{{0b00, Rational(0)}, {0b01, Rational(0)}, {0b10, Rational(1)}, {0b11, Rational(1)}}};
    CHECK_THROWS_WITH_AS(fkg_check(bad_mu), doctest::Contains("not log-supermodular"),
                         PreconditionError);

    // lattice not closed
    FkgCheckInput open_lattice;
    open_lattice.elements = {0b01, 0b10, 0b11};
    open_lattice.mu = {{0b01, Rational(1, 2)}, {0b10, Rational(1, 4)}, {0b11, Rational(1, 4)}};
    open_lattice.functions = {};
    CHECK_THROWS_AS(fkg_check(open_lattice), PreconditionError);
}

TEST_CASE("chain measures validate") {
    const auto chain = induced_chain(
        Permutation::parse("21"),
        {IndexSubset(), IndexSubset::from_indices({1}), IndexSubset::from_indices({1, 2})});
    CHECK_NOTHROW(ChainMeasure::uniform(chain));
    CHECK_THROWS_AS(ChainMeasure::make(chain, {Rational(1, 2), Rational(1, 2)}), InvalidInputError);
    CHECK_THROWS_AS(
        ChainMeasure::make(chain, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}),
        InvalidInputError);
    CHECK_NOTHROW(ChainMeasure::make(chain, {Rational(1, 2), Rational(1, 2), Rational(0)}));
}

TEST_SUITE_END();
