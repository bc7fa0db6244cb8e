#include "permpat/occurrence.hpp"

#include "permpat/errors.hpp"

#include <algorithm>
#include <limits>

namespace permpat {

namespace {

void require_fits(const Permutation& host, const Permutation& pattern) {
    if (pattern.size() > host.size()) {
        throw InvalidInputError("pattern length " + std::to_string(pattern.size()) +
                                " exceeds host length " + std::to_string(host.size()));
    }
}

// Backtracking embedder. Pattern positions are matched left to right; each
// prefix keeps an admissible host-value window derived from the pattern
// values already placed. Visitor receives the chosen 0-based host indices
// and returns false to stop the search.
class Embedder {
public:
    Embedder(const Permutation& host, const Permutation& pattern)
        : host_(host.values()), pat_(pattern.values()) {
        const int d = static_cast<int>(pat_.size());
        pred_.assign(static_cast<std::size_t>(d), -1);
        succ_.assign(static_cast<std::size_t>(d), -1);
        for (int k = 0; k < d; ++k) {
            int lo = std::numeric_limits<int>::min(), hi = std::numeric_limits<int>::max();
            for (int i = 0; i < k; ++i) {
                if (pat_[i] < pat_[k] && pat_[i] > lo) {
                    lo = pat_[i];
                    pred_[static_cast<std::size_t>(k)] = i;
                }
                if (pat_[i] > pat_[k] && pat_[i] < hi) {
                    hi = pat_[i];
                    succ_[static_cast<std::size_t>(k)] = i;
                }
            }
        }
        chosen_.assign(static_cast<std::size_t>(d), 0);
    }

    template <typename Visitor>
    bool run(Visitor&& visit) {
        if (pat_.empty()) return visit(chosen_, 0);  // epsilon occurs at the empty subset
        return descend(0, 0, visit);
    }

private:
    template <typename Visitor>
    bool descend(int k, int start, Visitor&& visit) {
        const int n = static_cast<int>(host_.size());
        const int d = static_cast<int>(pat_.size());
        const int pred = pred_[static_cast<std::size_t>(k)];
        const int succ = succ_[static_cast<std::size_t>(k)];
        const int lo = pred < 0 ? 0 : host_[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(pred)])];
        const int hi = succ < 0 ? n + 1 : host_[static_cast<std::size_t>(chosen_[static_cast<std::size_t>(succ)])];
        for (int j = start; j < n; ++j) {
            if (d - k > n - j) break;  // not enough positions left
            const int hv = host_[static_cast<std::size_t>(j)];
            if (hv <= lo || hv >= hi) continue;
            chosen_[static_cast<std::size_t>(k)] = j;
            if (k + 1 == d) {
                if (!visit(chosen_, d)) return false;
            } else {
                if (!descend(k + 1, j + 1, visit)) return false;
            }
        }
        return true;
    }

    const std::vector<int>& host_;
    std::vector<int> pat_;
    std::vector<int> pred_, succ_;  // prefix neighbors by value, -1 if none
    std::vector<int> chosen_;
};

IndexSubset to_subset(const std::vector<int>& chosen0, int d) {
    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = chosen0[static_cast<std::size_t>(i)] + 1;
    return IndexSubset::unchecked(std::move(idx));
}

}  // namespace

bool PatternSet::contains(const Permutation& v) const {
    return std::binary_search(patterns.begin(), patterns.end(), v);
}

OccurrenceSet occurrence_set(const Permutation& host, const Permutation& pattern) {
    require_fits(host, pattern);
    OccurrenceSet out{pattern, host.size(), {}};
    Embedder emb(host, pattern);
    emb.run([&](const std::vector<int>& chosen, int d) {
        out.locations.push_back(to_subset(chosen, d));
        return true;
    });
    // left-to-right index choice yields lexicographic order already
    return out;
}

std::uint64_t occ(const Permutation& host, const Permutation& pattern) {
    require_fits(host, pattern);
    std::uint64_t count = 0;
    Embedder emb(host, pattern);
    emb.run([&](const std::vector<int>&, int) {
        if (count == std::numeric_limits<std::uint64_t>::max())
            throw CapacityError("occurrence count overflows 64 bits");
        ++count;
        return true;
    });
    return count;
}

bool contains(const Permutation& host, const Permutation& pattern) {
    require_fits(host, pattern);
    bool found = false;
    Embedder emb(host, pattern);
    emb.run([&](const std::vector<int>&, int) {
        found = true;
        return false;
    });
    return found;
}

PatternSet contained_patterns(const Permutation& host, int d) {
    if (d < 1 || d > host.size()) {
        throw InvalidInputError("pattern length " + std::to_string(d) + " out of range [1," +
                                std::to_string(host.size()) + "]");
    }
    std::vector<Permutation> seen;
    for (const IndexSubset& a : SubsetRange(host.size(), d)) {
        Permutation w = reduce(subsequence(host, a));
        auto it = std::lower_bound(seen.begin(), seen.end(), w);
        if (it == seen.end() || *it != w) seen.insert(it, std::move(w));
    }
    return PatternSet{d, std::move(seen)};
}

OccurrenceSet occurrence_oracle(const Permutation& host, const Permutation& pattern) {
    require_fits(host, pattern);
    OccurrenceSet out{pattern, host.size(), {}};
    for (const IndexSubset& a : SubsetRange(host.size(), pattern.size())) {
        if (reduce(subsequence(host, a)) == pattern) out.locations.push_back(a);
    }
    return out;
}

}  // namespace permpat
