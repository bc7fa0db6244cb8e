#include "permpat/census.hpp"

#include "permpat/errors.hpp"
#include "permpat/numeric.hpp"
#include "sharding.hpp"

#include <algorithm>

namespace permpat {

using detail::run_sharded;

std::uint64_t OccurrenceCensus::total() const {
    std::uint64_t t = 0;
    for (const auto& [r, f] : by_count) t += f;
    return t;
}

OccurrenceCensus census(int n, const Permutation& v, const CensusOptions& opts) {
    if (v.size() > n) {
        throw InvalidInputError("pattern length " + std::to_string(v.size()) +
                                " exceeds census length " + std::to_string(n));
    }
    const int cap = opts.collect_classes ? opts.class_cap : opts.count_cap;
    if (n > cap) {
        throw CapacityError("census over S_" + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(cap));
    }

    struct Shard {
        std::map<std::uint64_t, std::uint64_t> by_count;
        std::map<std::vector<IndexSubset>, std::uint64_t> classes;
        bool classes_complete = true;
    };

    const std::uint64_t total = permutation_count(n);
    auto shards = run_sharded<Shard>(total, opts.threads, [&](std::uint64_t begin, std::uint64_t end) {
        Shard shard;
        for_each_permutation_range(n, begin, end, [&](const Permutation& pi) {
            OccurrenceSet bs = occurrence_set(pi, v);
            ++shard.by_count[bs.count()];
            if (opts.collect_classes && shard.classes_complete && bs.count() > 0) {
                ++shard.classes[std::move(bs.locations)];
                if (shard.classes.size() > opts.max_classes) {
                    shard.classes.clear();
                    shard.classes_complete = false;
                }
            }
        });
        return shard;
    });

    OccurrenceCensus out;
    out.n = n;
    out.pattern = v;
    out.classes_requested = opts.collect_classes;
    out.classes_complete = opts.collect_classes;
    for (auto& shard : shards) {
        for (const auto& [r, f] : shard.by_count) out.by_count[r] += f;
        out.classes_complete = out.classes_complete && shard.classes_complete;
    }
    if (opts.collect_classes && out.classes_complete) {
        for (auto& shard : shards) {
            for (auto& [key, f] : shard.classes) out.by_location_class[key] += f;
            if (out.by_location_class.size() > opts.max_classes) {
                out.by_location_class.clear();
                out.classes_complete = false;
                break;
            }
        }
    }
    if (!out.classes_complete) out.by_location_class.clear();
    return out;
}

ChainSpec induced_chain(const Permutation& v, std::vector<IndexSubset> subsets) {
    const int d = v.size();
    if (static_cast<int>(subsets.size()) != d + 1) {
        throw InvalidInputError("chain must list d+1 = " + std::to_string(d + 1) +
                                " subsets including {} and [d]; got " +
                                std::to_string(subsets.size()));
    }
    for (int i = 0; i <= d; ++i) {
        const IndexSubset& a = subsets[static_cast<std::size_t>(i)];
        if (a.size() != i) {
            throw InvalidInputError("chain subset A_" + std::to_string(i) + " must have size " +
                                    std::to_string(i) + "; got " + a.str());
        }
        if (!a.indices().empty() && a.indices().back() > d) {
            throw InvalidInputError("chain subset A_" + std::to_string(i) + " = " + a.str() +
                                    " is not a subset of [" + std::to_string(d) + "]");
        }
        if (i > 0) {
            const IndexSubset& prev = subsets[static_cast<std::size_t>(i - 1)];
            if (!std::includes(a.indices().begin(), a.indices().end(), prev.indices().begin(),
                               prev.indices().end())) {
                throw InvalidInputError("chain is missing strict inclusion at step " +
                                        std::to_string(i) + ": " + prev.str() + " is not contained in " +
                                        a.str());
            }
        }
    }
    ChainSpec chain;
    chain.d = d;
    chain.induced.reserve(subsets.size());
    for (const IndexSubset& a : subsets) chain.induced.push_back(reduce(subsequence(v, a)));
    chain.subsets = std::move(subsets);
    return chain;
}

std::vector<std::uint64_t> conditional_avoidance_counts(int n, const ChainSpec& chain, int cap,
                                                        int threads) {
    const int d = chain.d;
    if (d < 2) throw InvalidInputError("conditional avoidance needs a chain with d >= 2");
    if (n > cap) {
        throw CapacityError("scan over S_" + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(cap));
    }

    using Counts = std::vector<std::uint64_t>;
    const std::uint64_t total = permutation_count(n);
    auto shards = run_sharded<Counts>(total, threads, [&](std::uint64_t begin, std::uint64_t end) {
        Counts counts(static_cast<std::size_t>(d - 1), 0);
        for_each_permutation_range(n, begin, end, [&](const Permutation& pi) {
            // minimal i with pi avoiding v^i; avoiding v^{i-1} implies
            // avoiding v^i, so the first failure classifies pi. Patterns
            // longer than the host are avoided outright.
            for (int i = 1; i <= d; ++i) {
                const Permutation& vi = chain.induced[static_cast<std::size_t>(i)];
                if (vi.size() > pi.size() || !contains(pi, vi)) {
                    if (i >= 2) ++counts[static_cast<std::size_t>(i - 2)];
                    break;
                }
            }
        });
        return counts;
    });

    Counts out(static_cast<std::size_t>(d - 1), 0);
    for (const Counts& shard : shards)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += shard[i];
    return out;
}

}  // namespace permpat
