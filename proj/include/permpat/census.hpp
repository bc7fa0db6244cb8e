#pragma once

#include "permpat/occurrence.hpp"
#include "permpat/permutation.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace permpat {

struct CensusOptions {
    bool collect_classes = true;
    // Location-class maps can approach n! entries for rich patterns; above
    // this many classes the census degrades to counts only.
    std::size_t max_classes = 1'000'000;
    int class_cap = 8;  // n cap with location classes
    int count_cap = 9;  // n cap for counts only
    int threads = 1;
};

// Whole-S_n census for one pattern: f_r (by occurrence count) and, when
// collected, f_{B_1..B_r} (by exact occurrence-location set). Class keys are
// location lists sorted lexicographically, so iteration order is stable
// across runs and shard counts.
struct OccurrenceCensus {
    int n = 0;
    Permutation pattern;
    std::map<std::uint64_t, std::uint64_t> by_count;
    std::map<std::vector<IndexSubset>, std::uint64_t> by_location_class;
    bool classes_requested = true;
    bool classes_complete = true;  // false once the class guard trips

    std::uint64_t total() const;  // sum of by_count = n!
};

OccurrenceCensus census(int n, const Permutation& v, const CensusOptions& opts = {});

// A maximal chain of subsets {} = A_0 < A_1 < ... < A_d = [d] together with
// the patterns induced by restricting a length-d pattern to each A_i.
struct ChainSpec {
    int d = 0;
    std::vector<IndexSubset> subsets;   // A_0 .. A_d
    std::vector<Permutation> induced;   // v^0 = epsilon .. v^d = v
};

// Builds the chain from the full subset tower (including A_0 = {} and
// A_d = [d]); validates sizes and strict inclusion.
ChainSpec induced_chain(const Permutation& v, std::vector<IndexSubset> subsets);

// Counts, for i = 2..d, the permutations in S_n avoiding v^i while
// containing v^{i-1}. Returned vector has d-1 entries (index 0 is i=2).
// Since v^{i-1} occurs in v^i, these classes partition the v-avoiders.
std::vector<std::uint64_t> conditional_avoidance_counts(int n, const ChainSpec& chain,
                                                        int cap = kDefaultEnumerationCap,
                                                        int threads = 1);

}  // namespace permpat
