#pragma once

#include "permpat/census.hpp"
#include "permpat/measure.hpp"
#include "permpat/occurrence.hpp"
#include "permpat/report.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace permpat {

// c_d(pi) <= (c_ell(pi) * C(d,ell))^(d/ell), for 1 <= ell < d < n.
// Exact mode compares c_d^ell <= (c_ell * C(d,ell))^d in big integers; the
// fractional exponent is never floated.
InequalityReport verify_t1a(const Permutation& pi, int ell, int d, NumericMode mode);

// occ(pi,v) <= prod_{w in C_ell(v)} occ(pi,w)^(occ(v,w)/C(d-1,ell-1)), for
// 1 < ell < |v| <= |pi|. If some occ(pi,w) = 0 both sides vanish; reported
// as holds with zero slack.
InequalityReport verify_t1b(const Permutation& pi, const Permutation& v, int ell,
                            NumericMode mode);

struct T2aOptions {
    // Recompute the left side by streaming S_n (one nu per containing
    // permutation) and require agreement with the grouped per-class product;
    // this exercises the occurrence-class partition of S_n operationally.
    bool check_partition = true;
    CensusOptions census;
};

// prod over occurrence classes {B_1..B_r} of nu^{class count} <= mass of
// {|A| < d}. The measure must be log-supermodular (tables are pair-scanned;
// Bernoulli qualifies by construction).
InequalityReport verify_t2a(int n, const Permutation& v, const SubsetMeasure& mu, NumericMode mode,
                            const T2aOptions& opts = {});

// Both routes to the T2a left side, for direct inspection in tests.
std::pair<Rational, Rational> t2a_lhs_routes_exact(int n, const Permutation& v,
                                                   const SubsetMeasure& mu,
                                                   const CensusOptions& census_opts = {});
std::pair<double, double> t2a_lhs_routes_log(int n, const Permutation& v, const SubsetMeasure& mu,
                                             const CensusOptions& census_opts = {});

// prod_{v in C_d(pi)} nu(B_pi(v)) <= mass of {|A| < d}, for one fixed host.
InequalityReport verify_lemma3(const Permutation& pi, int d, const SubsetMeasure& mu,
                               NumericMode mode);

// The chain inequality: with f_i the count of permutations avoiding v^i
// while containing v^{i-1},
//   prod_{i=2}^d (sum_{l<i} mu_l + sum_{l>=i} x_l mu_l)^{f_i}
//     <= sum_{i=0}^d mu_i prod_{l=2}^i x_l^{f_l},
// for 0 < x_d <= ... <= x_2 < 1.
InequalityReport verify_t2b(int n, const ChainMeasure& mu, const std::vector<Rational>& x,
                            NumericMode mode, int cap = kDefaultEnumerationCap, int threads = 1);

struct ConjectureRow {
    Permutation v;
    double slack_log = 0;
    std::uint64_t inversions = 0;  // disorder statistic; substitute your own downstream
};

// T2a slack for every v in S_d, paired with a disorder statistic. Emits the
// table only; asserts nothing about the slack/disorder relation.
std::vector<ConjectureRow> conjecture_scan(int n, int d, const SubsetMeasure& mu,
                                           NumericMode mode);

struct SweepSummary {
    std::uint64_t total = 0;
    std::uint64_t holds = 0;
    std::uint64_t violated = 0;
    std::uint64_t indeterminate = 0;
    double min_slack_log = kPosInf;  // over finite slacks
    std::optional<InequalityReport> first_violation;

    void add(const InequalityReport& report);
    void merge(const SweepSummary& other);
    bool all_hold() const { return violated == 0 && indeterminate == 0 && total > 0; }
};

// Every pi in S_n, every valid (ell, d) pair.
SweepSummary sweep_t1a(int n, NumericMode mode, int threads = 1,
                       std::vector<InequalityReport>* collect = nullptr,
                       int cap = kDefaultEnumerationCap);

// Every pi in S_n, every v of each given pattern length, every valid ell.
SweepSummary sweep_t1b(int n, const std::vector<int>& pattern_lengths, NumericMode mode,
                       int threads = 1, std::vector<InequalityReport>* collect = nullptr,
                       int cap = kDefaultEnumerationCap);

// Seeded random (weights, x) trials of the chain inequality.
SweepSummary sweep_t2b_random(int n, const ChainSpec& chain, int trials, std::uint64_t seed,
                              std::vector<InequalityReport>* collect = nullptr,
                              int cap = kDefaultEnumerationCap);

struct SimulationRow {
    std::uint64_t sample_index = 0;
    std::uint64_t lhs = 0;   // occ(pi, v)
    double rhs_log = 0;      // log of the bound
    Verdict verdict = Verdict::holds;
};

// Seeded random hosts in S_n scored against the T1b bound; the Figure-style
// experiment. Verdicts come from the exact comparison.
std::vector<SimulationRow> simulate_t1b(int n, int samples, const Permutation& v, int ell,
                                        std::uint64_t seed,
                                        std::vector<Permutation>* out_hosts = nullptr);

}  // namespace permpat
