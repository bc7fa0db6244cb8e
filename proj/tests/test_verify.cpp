#include "permpat/errors.hpp"
#include "permpat/json_io.hpp"
#include "permpat/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace permpat;

namespace {

Permutation reverse_complement(const Permutation& pi) {
    const int n = pi.size();
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        out[static_cast<std::size_t>(n - i)] = n + 1 - pi.value_at(i);
    }
    return Permutation::from_values(std::move(out));
}

// test-side route to the T2a sides: occurrence_oracle for location sets, raw
// mask loops for nu, no shared code with verify_t2a's path
std::pair<Rational, Rational> t2a_sides_by_brute_force(int n, const Permutation& v,
                                                       const Rational& p) {
    std::vector<Rational> mass_by_size(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        mass_by_size[static_cast<std::size_t>(k)] =
            rational_pow(p, static_cast<std::uint64_t>(k)) *
            rational_pow(1 - p, static_cast<std::uint64_t>(n - k));
    }
    Rational lhs = 1;
    for (const Permutation& pi : PermutationRange(n)) {
        const auto locations = occurrence_oracle(pi, v).locations;
        if (locations.empty()) continue;
        Rational nu = 0;
        for (std::uint32_t a = 0; a < (1u << n); ++a) {
            bool survives = true;
            for (const IndexSubset& b : locations) {
                if ((b.mask() & ~a) == 0) survives = false;
            }
            if (survives) nu += mass_by_size[static_cast<std::size_t>(std::popcount(a))];
        }
        lhs *= nu;
    }
    Rational rhs = 0;
    for (std::uint32_t a = 0; a < (1u << n); ++a) {
        if (std::popcount(a) < v.size()) rhs += mass_by_size[static_cast<std::size_t>(std::popcount(a))];
    }
    return {lhs, rhs};
}

ChainSpec chain_2143() {
    return induced_chain(Permutation::parse("2143"),
                         {IndexSubset(), IndexSubset::from_indices({1}),
                          IndexSubset::from_indices({1, 2}), IndexSubset::from_indices({1, 2, 3}),
                          IndexSubset::from_indices({1, 2, 3, 4})});
}

ChainSpec chain_143265() {
    return induced_chain(Permutation::parse("143265"),
                         {IndexSubset(), IndexSubset::from_indices({2}),
                          IndexSubset::from_indices({2, 3}), IndexSubset::from_indices({2, 3, 5}),
                          IndexSubset::from_indices({2, 3, 5, 6}),
                          IndexSubset::from_indices({2, 3, 4, 5, 6}),
                          IndexSubset::from_indices({1, 2, 3, 4, 5, 6})});
}

}  // namespace

TEST_SUITE_BEGIN("verify");

TEST_CASE("t1a on identity hosts: lhs 1, slack (d/ell) log C(d,ell)") {
    for (int n : {5, 7}) {
        const Permutation id = Permutation::identity(n);
        for (int d = 2; d < n; ++d) {
            for (int ell = 1; ell < d; ++ell) {
                const auto report = verify_t1a(id, ell, d, NumericMode::exact);
                CHECK(report.holds == Verdict::holds);
                CHECK(report.lhs_log == 0.0);
                const double expected =
                    static_cast<double>(d) / ell * std::log(to_double(Rational(binomial(d, ell))));
                CHECK(report.slack_log == doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("t1a numbers recomputed independently") {
    const Permutation pi = Permutation::parse("5274316");
    // independent c_d route: a plain set of reduced subsequences
    const auto count_patterns = [&](int d) {
        std::set<std::vector<int>> seen;
        for (const IndexSubset& a : SubsetRange(pi.size(), d)) {
            seen.insert(reduce(subsequence(pi, a)).values());
        }
        return seen.size();
    };
    const auto report = verify_t1a(pi, 2, 4, NumericMode::exact);
    CHECK(report.holds == Verdict::holds);
    CHECK(*report.lhs_exact == std::to_string(count_patterns(4)));
    const double rhs_expected =
        2.0 * std::log(static_cast<double>(count_patterns(2)) * 6.0);  // (d/ell)=2, C(4,2)=6
    CHECK(report.rhs_log == doctest::Approx(rhs_expected).epsilon(1e-12));
}

TEST_CASE("t1a rejects bad parameter ranges") {
    const Permutation pi = Permutation::parse("4231");
    CHECK_THROWS_AS(verify_t1a(pi, 0, 2, NumericMode::exact), InvalidInputError);
    CHECK_THROWS_AS(verify_t1a(pi, 2, 2, NumericMode::exact), InvalidInputError);
    CHECK_THROWS_AS(verify_t1a(pi, 1, 4, NumericMode::exact), InvalidInputError);  // d = n
}

TEST_CASE("t1a holds across S_5 exhaustively") {
    const auto summary = sweep_t1a(5, NumericMode::exact);
    CHECK(summary.total == 120 * 6);  // (ell,d) pairs for n=5: 6
    CHECK(summary.all_hold());
}

TEST_CASE("t1b identity case reduces to the binomial inequality") {
    for (int n : {6, 9}) {
        for (int d : {3, 4}) {
            const auto report =
                verify_t1b(Permutation::identity(n), Permutation::identity(d), d - 1,
                           NumericMode::exact);
            CHECK(report.holds == Verdict::holds);
            CHECK(*report.lhs_exact == rational_str(Rational(binomial(n, d))));
            const double expected_rhs = static_cast<double>(d) / (d - 1) *
                                        std::log(to_double(Rational(binomial(n, d - 1))));
            CHECK(report.rhs_log == doctest::Approx(expected_rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("t1b zero conventions") {
    // rhs > 0, lhs = 0: host avoids v but contains every short pattern
    const auto trivial =
        verify_t1b(Permutation::parse("214365"), Permutation::parse("321"), 2, NumericMode::exact);
    CHECK(trivial.holds == Verdict::holds);
    CHECK(*trivial.lhs_exact == "0");
    CHECK(trivial.lhs_log == kNegInf);
    CHECK(trivial.rhs_log > 0);

    // some occ(pi,w) = 0 forces both sides to zero: holds with slack 0
    const auto both_zero =
        verify_t1b(Permutation::identity(6), Permutation::parse("132"), 2, NumericMode::exact);
    CHECK(both_zero.holds == Verdict::holds);
    CHECK(both_zero.slack_log == 0.0);
    CHECK(*both_zero.lhs_exact == "0");
    CHECK(*both_zero.rhs_exact == "0");

    const auto both_zero_float =
        verify_t1b(Permutation::identity(6), Permutation::parse("132"), 2, NumericMode::floating);
    CHECK(both_zero_float.holds == Verdict::holds);
    CHECK(both_zero_float.slack_log == 0.0);
}

TEST_CASE("t1b range validation") {
    CHECK_THROWS_AS(
        verify_t1b(Permutation::parse("4231"), Permutation::parse("213"), 1, NumericMode::exact),
        InvalidInputError);
    CHECK_THROWS_AS(
        verify_t1b(Permutation::parse("21"), Permutation::parse("213"), 2, NumericMode::exact),
        InvalidInputError);
}

TEST_CASE("t1b slack is invariant under reverse-complement") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const Permutation pi = random_permutation(7, rng);
        const Permutation v = random_permutation(4, rng);
        for (int ell = 2; ell <= 3; ++ell) {
            const auto a = verify_t1b(pi, v, ell, NumericMode::exact);
            const auto b = verify_t1b(reverse_complement(pi), reverse_complement(v), ell,
                                      NumericMode::exact);
            CHECK(*a.lhs_exact == *b.lhs_exact);
            if (std::isfinite(a.slack_log)) {
                CHECK(a.slack_log == doctest::Approx(b.slack_log).epsilon(1e-12));
            } else {
                CHECK(a.slack_log == b.slack_log);
            }
        }
    }
}

TEST_CASE("t1b exhaustive sweep at small size") {
    const auto summary = sweep_t1b(5, {3, 4}, NumericMode::exact);
    CHECK(summary.total == 120 * (6 * 1 + 24 * 2));
    CHECK(summary.all_hold());
}

TEST_CASE("t2a matches a full brute-force recomputation (n=4, v=21, p=1/2)") {
    const auto mu = SubsetMeasure::bernoulli(4, Rational(1, 2));
    const auto report = verify_t2a(4, Permutation::parse("21"), mu, NumericMode::exact);
    CHECK(report.holds == Verdict::holds);
    const auto [lhs, rhs] = t2a_sides_by_brute_force(4, Permutation::parse("21"), Rational(1, 2));
    CHECK(*report.lhs_exact == rational_str(lhs));
    CHECK(*report.rhs_exact == rational_str(rhs));
    CHECK(rhs == Rational(5, 16));
    CHECK(lhs <= rhs);
}

TEST_CASE("t2a degenerate monotone pattern with d = n") {
    // only the single class {[n]} is populated
    const auto mu = SubsetMeasure::bernoulli(4, Rational(1, 2));
    const auto report = verify_t2a(4, Permutation::parse("1234"), mu, NumericMode::exact);
    CHECK(report.holds == Verdict::holds);
}

TEST_CASE("t2a grouped and streamed left sides agree") {
    for (const char* pattern : {"21", "312", "123"}) {
        const Permutation v = Permutation::parse(pattern);
        for (const auto& p : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
            const auto mu = SubsetMeasure::bernoulli(5, p);
            const auto [grouped, streamed] = t2a_lhs_routes_exact(5, v, mu);
            CHECK(grouped == streamed);
            const auto [g_log, s_log] = t2a_lhs_routes_log(5, v, mu);
            CHECK(g_log == doctest::Approx(s_log).epsilon(1e-12));
        }
    }
}

TEST_CASE("t2a accepts log-supermodular tables and rejects others") {
    // product measure written out as a table is fine
    const auto half = SubsetMeasure::bernoulli(3, Rational(1, 2));
    std::map<SubsetMask, Rational> table;
    for (SubsetMask a = 0; a < 8; ++a) table[a] = half.mass(a);
    const auto mu = SubsetMeasure::from_table(3, std::move(table));
    CHECK(verify_t2a(3, Permutation::parse("21"), mu, NumericMode::exact).holds == Verdict::holds);

    std::map<SubsetMask, Rational> bad{{0b00, Rational(1, 10)},
                                       {0b01, Rational(2, 5)},
                                       {0b10, Rational(2, 5)},
                                       {0b11, Rational(1, 10)}};
    const auto bad_mu = SubsetMeasure::from_table(2, std::move(bad));
    CHECK_THROWS_AS(verify_t2a(2, Permutation::parse("21"), bad_mu, NumericMode::exact),
                    PreconditionError);
}

TEST_CASE("lemma: d = 1 is an equality forced by definitions") {
    for (const auto& p : {Rational(1, 2), Rational(2, 7)}) {
        const auto mu = SubsetMeasure::bernoulli(5, p);
        const auto report =
            verify_lemma3(Permutation::parse("35142"), 1, mu, NumericMode::exact);
        CHECK(report.holds == Verdict::holds);
        CHECK(report.slack_log == 0.0);
        CHECK(*report.lhs_exact == *report.rhs_exact);
        CHECK(*report.rhs_exact == rational_str(rational_pow(1 - p, 5)));
    }
}

TEST_CASE("lemma on the 1324 example, recomputed independently") {
    const Permutation pi = Permutation::parse("1324");
    const auto mu = SubsetMeasure::bernoulli(4, Rational(1, 2));
    const auto report = verify_lemma3(pi, 3, mu, NumericMode::exact);
    CHECK(report.holds == Verdict::holds);

    Rational lhs = 1;
    for (const char* w : {"123", "132", "213"}) {  // C_3(1324)
        const auto locations = occurrence_oracle(pi, Permutation::parse(w)).locations;
        Rational nu = 0;
        for (std::uint32_t a = 0; a < 16; ++a) {
            bool survives = true;
            for (const IndexSubset& b : locations) {
                if ((b.mask() & ~a) == 0) survives = false;
            }
            if (survives) nu += Rational(1, 16);
        }
        lhs *= nu;
    }
    CHECK(*report.lhs_exact == rational_str(lhs));
}

TEST_CASE("lemma holds across S_4 for d in {2,3}") {
    const auto mu = SubsetMeasure::bernoulli(4, Rational(1, 2));
    for (const Permutation& pi : PermutationRange(4)) {
        for (int d : {2, 3}) {
            CHECK(verify_lemma3(pi, d, mu, NumericMode::exact).holds == Verdict::holds);
        }
    }
}

TEST_CASE("t2b with no counted permutations is an equality") {
    const auto chain = induced_chain(
        Permutation::parse("21"),
        {IndexSubset(), IndexSubset::from_indices({2}), IndexSubset::from_indices({1, 2})});
    const auto report = verify_t2b(0, ChainMeasure::uniform(chain), {Rational(1, 2)},
                                   NumericMode::exact);
    CHECK(report.holds == Verdict::holds);
    CHECK(report.slack_log == 0.0);
    CHECK(*report.lhs_exact == "1");
    CHECK(*report.rhs_exact == "1");
}

TEST_CASE("t2b on the 143265 chain with uniform weights and x = 1/2") {
    const auto chain = chain_143265();
    const std::vector<Rational> x(5, Rational(1, 2));
    const auto report = verify_t2b(6, ChainMeasure::uniform(chain), x, NumericMode::exact);
    CHECK(report.holds == Verdict::holds);
    CHECK(report.slack_log > 0);

    // shard count must not change the verdict or the sides
    const auto threaded = verify_t2b(6, ChainMeasure::uniform(chain), x, NumericMode::exact,
                                     kDefaultEnumerationCap, 4);
    CHECK(*threaded.lhs_exact == *report.lhs_exact);
    CHECK(*threaded.rhs_exact == *report.rhs_exact);
}

TEST_CASE("t2b validates the x ladder by index") {
    const auto chain = chain_2143();
    const auto mu = ChainMeasure::uniform(chain);
    CHECK_THROWS_WITH_AS(
        verify_t2b(4, mu, {Rational(3, 10), Rational(1, 2), Rational(1, 4)}, NumericMode::exact),
        doctest::Contains("x_3 > x_2"), InvalidInputError);
    CHECK_THROWS_AS(verify_t2b(4, mu, {Rational(1, 2)}, NumericMode::exact), InvalidInputError);
    CHECK_THROWS_AS(
        verify_t2b(4, mu, {Rational(1, 2), Rational(1, 2), Rational(1)}, NumericMode::exact),
        InvalidInputError);
}

TEST_CASE("t2b float mode stays sane as x approaches 1") {
    const auto chain = chain_2143();
    const Rational near_one(999999999, 1000000000);
    const std::vector<Rational> x(3, near_one);
    const auto report = verify_t2b(4, ChainMeasure::uniform(chain), x, NumericMode::floating);
    CHECK(report.slack_log >= -1e-6);
    CHECK(std::abs(report.rhs_log) <= 1e-6);  // rhs tends to 1
}

TEST_CASE("t2b random trials all hold") {
    const auto summary = sweep_t2b_random(4, chain_2143(), 100, 777);
    CHECK(summary.total == 100);
    CHECK(summary.all_hold());
}

TEST_CASE("conjecture scan rows are consistent with single runs") {
    const auto mu = SubsetMeasure::bernoulli(5, Rational(1, 2));
    const auto rows = conjecture_scan(5, 3, mu, NumericMode::exact);
    REQUIRE(rows.size() == 6);  // 3! rows, lexicographic
    CHECK(rows.front().v == Permutation::parse("123"));
    CHECK(rows.front().inversions == 0);
    CHECK(rows.back().v == Permutation::parse("321"));
    T2aOptions opts;
    opts.check_partition = false;
    for (const auto& row : rows) {
        const auto single = verify_t2a(5, row.v, mu, NumericMode::exact, opts);
        CHECK(row.slack_log == doctest::Approx(single.slack_log).epsilon(1e-12));
    }
}

TEST_CASE("exact and float modes agree on report logs (n <= 5)") {
    const auto mu4 = SubsetMeasure::bernoulli(4, Rational(1, 2));
    const auto chain = chain_2143();
    const std::vector<Rational> x{Rational(3, 5), Rational(1, 2), Rational(2, 5)};

    const std::vector<std::pair<InequalityReport, InequalityReport>> pairs{
        {verify_t1a(Permutation::parse("52431"), 2, 3, NumericMode::exact),
         verify_t1a(Permutation::parse("52431"), 2, 3, NumericMode::floating)},
        {verify_t1b(Permutation::parse("52431"), Permutation::parse("2143"), 2, NumericMode::exact),
         verify_t1b(Permutation::parse("52431"), Permutation::parse("2143"), 2,
                    NumericMode::floating)},
        {verify_t2a(4, Permutation::parse("21"), mu4, NumericMode::exact),
         verify_t2a(4, Permutation::parse("21"), mu4, NumericMode::floating)},
        {verify_lemma3(Permutation::parse("1324"), 3, mu4, NumericMode::exact),
         verify_lemma3(Permutation::parse("1324"), 3, mu4, NumericMode::floating)},
        {verify_t2b(4, ChainMeasure::uniform(chain), x, NumericMode::exact),
         verify_t2b(4, ChainMeasure::uniform(chain), x, NumericMode::floating)},
    };
    const auto agree = [](double a, double b) {
        if (a == b) return true;  // covers matching infinities
        return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    for (const auto& [exact, floating] : pairs) {
        CHECK(agree(exact.lhs_log, floating.lhs_log));
        CHECK(agree(exact.rhs_log, floating.rhs_log));
        CHECK(exact.holds == Verdict::holds);
        CHECK(floating.holds == Verdict::holds);
    }
}

TEST_CASE("simulation rows are deterministic and bounded") {
    const auto v = Permutation::parse("5274316");
    const auto rows1 = simulate_t1b(12, 20, v, 3, 42);
    const auto rows2 = simulate_t1b(12, 20, v, 3, 42);
    REQUIRE(rows1.size() == 20);
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].lhs == rows2[i].lhs);
        CHECK(rows1[i].rhs_log == rows2[i].rhs_log);
        CHECK(rows1[i].verdict == Verdict::holds);
    }
    // spot-check the left side against the oracle on regenerated hosts
    std::vector<Permutation> hosts;
    simulate_t1b(12, 20, v, 3, 42, &hosts);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(rows1[i].lhs == occurrence_oracle(hosts[i], v).count());
    }
}

TEST_CASE("report serialization carries the documented fields") {
    const auto json = report_json(verify_t1a(Permutation::parse("52431"), 1, 2, NumericMode::exact));
    for (const char* key :
         {"theorem_id", "inputs", "lhs_log", "rhs_log", "holds", "slack_log", "mode"}) {
        CHECK(json.contains(key));
    }
    CHECK(json["mode"] == "exact");
    const std::string csv = report_csv_row(verify_t1a(Permutation::parse("52431"), 1, 2,
                                                      NumericMode::exact));
    CHECK(csv.find("T1a") == 0);
}

TEST_SUITE_END();
