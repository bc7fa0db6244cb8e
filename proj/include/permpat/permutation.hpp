#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permpat {

// A permutation of [n], stored as its one-line notation with 1-based values.
// The empty permutation (n = 0) is valid. Immutable after construction.
class Permutation {
public:
    Permutation() = default;

    // Validates that `values` is a bijection on [n].
    static Permutation from_values(std::vector<int> values);
    static Permutation identity(int n);

    // Accepts the digit-string form ("5274316", lengths <= 9), the
    // whitespace- or comma-separated form ("5 2 7 4 3 1 6"), or "" for the
    // empty permutation.
    static Permutation parse(std::string_view text);

    // Fast path for enumeration internals; caller guarantees the bijection.
    static Permutation unchecked(std::vector<int> values);

    int size() const noexcept { return static_cast<int>(vals_.size()); }
    bool empty() const noexcept { return vals_.empty(); }

    // 1-based position access.
    int value_at(int pos) const;
    const std::vector<int>& values() const noexcept { return vals_; }

    // Canonical text form: "" for n = 0, digit string for n <= 9,
    // space-separated otherwise.
    std::string str() const;

    std::uint64_t inversions() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> vals_;
};

// A strictly increasing sequence of 1-based indices; an element of [n]_d.
class IndexSubset {
public:
    IndexSubset() = default;

    // Validates 1 <= i_1 < i_2 < ... < i_d.
    static IndexSubset from_indices(std::vector<int> indices);
    static IndexSubset from_mask(std::uint32_t mask);
    static IndexSubset unchecked(std::vector<int> indices);

    int size() const noexcept { return static_cast<int>(idx_.size()); }
    bool empty() const noexcept { return idx_.empty(); }
    const std::vector<int>& indices() const noexcept { return idx_; }

    // Bitmask with bit (i-1) set for each index i; indices must be <= 32.
    std::uint32_t mask() const;

    std::string str() const;  // "(1,3,4)"

    bool operator==(const IndexSubset&) const = default;
    auto operator<=>(const IndexSubset&) const = default;

private:
    std::vector<int> idx_;
};

// Order-isomorphic reduction: ranks each entry among the word's entries.
// The word 284 reduces to 132. Entries must be distinct.
Permutation reduce(std::span<const int> word);
Permutation reduce(const std::vector<int>& word);

// The subsequence (pi_j)_{j in at}, in index order, not reduced.
std::vector<int> subsequence(const Permutation& pi, const IndexSubset& at);

inline constexpr int kDefaultEnumerationCap = 9;

std::uint64_t permutation_count(int n);  // n!, n <= 20

// Lexicographic unrank: the rank-th permutation of S_n (rank in [0, n!)).
Permutation nth_permutation(int n, std::uint64_t rank);

// Streams S_n in lexicographic order.
class PermutationRange {
public:
    explicit PermutationRange(int n, int cap = kDefaultEnumerationCap);

    class iterator {
    public:
        using value_type = Permutation;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(int n, std::uint64_t remaining);

        const Permutation& operator*() const { return current_; }
        const Permutation* operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(std::default_sentinel_t) const { return remaining_ == 0; }

    private:
        Permutation current_;
        std::uint64_t remaining_ = 0;
    };

    iterator begin() const { return iterator(n_, count_); }
    std::default_sentinel_t end() const { return {}; }
    std::uint64_t count() const { return count_; }

private:
    int n_;
    std::uint64_t count_;
};

// Visits the lexicographic slice [begin_rank, end_rank) of S_n. Used by
// parallel scans; shard results merge deterministically.
template <typename Fn>
void for_each_permutation_range(int n, std::uint64_t begin_rank, std::uint64_t end_rank, Fn&& fn) {
    if (begin_rank >= end_rank) return;
    Permutation current = nth_permutation(n, begin_rank);
    std::vector<int> work = current.values();
    for (std::uint64_t r = begin_rank; r < end_rank; ++r) {
        fn(static_cast<const Permutation&>(current));
        if (r + 1 < end_rank) {
            std::next_permutation(work.begin(), work.end());
            current = Permutation::unchecked(work);
        }
    }
}

std::uint64_t subset_count(int n, int d);  // C(n,d) as u64

// Streams [n]_d in lexicographic order: (1,2,3), (1,2,4), ...
class SubsetRange {
public:
    SubsetRange(int n, int d);  // requires 0 <= d <= n

    class iterator {
    public:
        using value_type = IndexSubset;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(int n, int d, std::uint64_t remaining);

        const IndexSubset& operator*() const { return current_; }
        const IndexSubset* operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(std::default_sentinel_t) const { return remaining_ == 0; }

    private:
        int n_ = 0;
        IndexSubset current_;
        std::uint64_t remaining_ = 0;
    };

    iterator begin() const { return iterator(n_, d_, count_); }
    std::default_sentinel_t end() const { return {}; }
    std::uint64_t count() const { return count_; }

private:
    int n_;
    int d_;
    std::uint64_t count_;
};

// Uniform draw from [0, bound) by rejection; avoids the platform-dependent
// std::uniform_int_distribution so seeded runs are byte-identical everywhere.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Unbiased Fisher-Yates sample from S_n; identical seed, identical output.
Permutation random_permutation(int n, std::mt19937_64& rng);

}  // namespace permpat
