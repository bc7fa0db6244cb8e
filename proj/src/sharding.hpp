#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace permpat::detail {

// Splits [0, total) into near-equal shards and runs fn(begin, end) on each.
// Results land in per-shard slots, so merging in slot order is deterministic
// regardless of thread count.
template <typename ShardResult, typename Fn>
std::vector<ShardResult> run_sharded(std::uint64_t total, int threads, Fn&& fn) {
    const int shards =
        std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(total, 64))));
    std::vector<ShardResult> results(static_cast<std::size_t>(shards));
    if (shards == 1) {
        results[0] = fn(std::uint64_t{0}, total);
        return results;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(shards));
    for (int s = 0; s < shards; ++s) {
        const std::uint64_t begin =
            total * static_cast<std::uint64_t>(s) / static_cast<std::uint64_t>(shards);
        const std::uint64_t end =
            total * static_cast<std::uint64_t>(s + 1) / static_cast<std::uint64_t>(shards);
        workers.emplace_back(
            [&results, &fn, s, begin, end] { results[static_cast<std::size_t>(s)] = fn(begin, end); });
    }
    for (auto& w : workers) w.join();
    return results;
}

}  // namespace permpat::detail
