#pragma once

#include "permpat/permutation.hpp"

#include <cstdint>
#include <vector>

namespace permpat {

// The set B_pi(v): every index subset of the host at which the pattern
// occurs. Locations are kept in lexicographic order.
struct OccurrenceSet {
    Permutation pattern;
    int host_length = 0;
    std::vector<IndexSubset> locations;

    std::uint64_t count() const { return locations.size(); }
};

// The set C_d(pi) of distinct length-d patterns occurring in the host,
// sorted; c_d(pi) is patterns.size().
struct PatternSet {
    int d = 0;
    std::vector<Permutation> patterns;

    std::uint64_t count() const { return patterns.size(); }
    bool contains(const Permutation& v) const;
};

// All occurrences of `pattern` in `host`, found by backtracking over index
// positions with window pruning.
OccurrenceSet occurrence_set(const Permutation& host, const Permutation& pattern);

// Occurrence count only; skips materializing locations.
std::uint64_t occ(const Permutation& host, const Permutation& pattern);

// True iff the pattern occurs at least once (stops at the first embedding).
bool contains(const Permutation& host, const Permutation& pattern);

PatternSet contained_patterns(const Permutation& host, int d);

// Independent brute-force route: enumerate every d-subset, reduce, compare.
// Shares no pruning logic with occurrence_set; exists to guard it.
OccurrenceSet occurrence_oracle(const Permutation& host, const Permutation& pattern);

}  // namespace permpat
