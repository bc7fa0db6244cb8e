#include "permpat/permutation.hpp"

#include "permpat/errors.hpp"
#include "permpat/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace permpat {

Permutation Permutation::from_values(std::vector<int> values) {
    const int n = static_cast<int>(values.size());
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        const int v = values[static_cast<std::size_t>(i)];
        if (v < 1 || v > n) {
            throw InvalidInputError("value " + std::to_string(v) + " at position " +
                                    std::to_string(i + 1) + " is outside [1," + std::to_string(n) + "]");
        }
        if (seen[static_cast<std::size_t>(v)]) {
            throw InvalidInputError("duplicate value " + std::to_string(v) + " at position " +
                                    std::to_string(i + 1));
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    Permutation p;
    p.vals_ = std::move(values);
    return p;
}

Permutation Permutation::identity(int n) {
    if (n < 0) throw InvalidInputError("negative permutation length");
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return unchecked(std::move(v));
}

Permutation Permutation::unchecked(std::vector<int> values) {
    Permutation p;
    p.vals_ = std::move(values);
    return p;
}

int Permutation::value_at(int pos) const {
    if (pos < 1 || pos > size()) {
        throw InvalidInputError("position " + std::to_string(pos) + " out of range for length " +
                                std::to_string(size()));
    }
    return vals_[static_cast<std::size_t>(pos - 1)];
}

std::string Permutation::str() const {
    if (vals_.empty()) return "";
    std::string out;
    if (size() <= 9) {
        for (const int v : vals_) out += static_cast<char>('0' + v);
        return out;
    }
    for (std::size_t i = 0; i < vals_.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(vals_[i]);
    }
    return out;
}

std::uint64_t Permutation::inversions() const {
    std::uint64_t inv = 0;
    for (std::size_t i = 0; i < vals_.size(); ++i)
        for (std::size_t j = i + 1; j < vals_.size(); ++j)
            if (vals_[i] > vals_[j]) ++inv;
    return inv;
}

Permutation Permutation::parse(std::string_view text) {
    // trim
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return Permutation();  // epsilon

    const bool separated = text.find_first_of(" \t,") != std::string_view::npos;
    std::vector<int> values;
    if (separated) {
        std::string buf(text);
        for (char& c : buf)
            if (c == ',') c = ' ';
        std::istringstream in(buf);
        std::string tok;
        int pos = 0;
        while (in >> tok) {
            ++pos;
            try {
                std::size_t used = 0;
                const int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                values.push_back(v);
            } catch (const std::exception&) {
                throw InvalidInputError("bad permutation entry '" + tok + "' at position " +
                                        std::to_string(pos));
            }
        }
    } else {
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char c = text[i];
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw InvalidInputError(std::string("bad character '") + c + "' at position " +
                                        std::to_string(i + 1) + " of permutation text");
            }
            values.push_back(c - '0');
        }
        if (values.size() > 9) {
            throw InvalidInputError(
                "digit-string form only covers lengths up to 9; use whitespace-separated values");
        }
    }
    return from_values(std::move(values));
}

IndexSubset IndexSubset::from_indices(std::vector<int> indices) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] < 1) {
            throw InvalidInputError("index " + std::to_string(indices[i]) + " at position " +
                                    std::to_string(i + 1) + " must be >= 1");
        }
        if (i > 0 && indices[i] <= indices[i - 1]) {
            throw InvalidInputError("indices must be strictly increasing; saw " +
                                    std::to_string(indices[i - 1]) + " then " +
                                    std::to_string(indices[i]));
        }
    }
    IndexSubset s;
    s.idx_ = std::move(indices);
    return s;
}

IndexSubset IndexSubset::from_mask(std::uint32_t mask) {
    std::vector<int> idx;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) idx.push_back(i + 1);
    return unchecked(std::move(idx));
}

IndexSubset IndexSubset::unchecked(std::vector<int> indices) {
    IndexSubset s;
    s.idx_ = std::move(indices);
    return s;
}

std::uint32_t IndexSubset::mask() const {
    std::uint32_t m = 0;
    for (const int i : idx_) {
        if (i > 32) throw CapacityError("index " + std::to_string(i) + " exceeds bitmask width 32");
        m |= 1u << (i - 1);
    }
    return m;
}

std::string IndexSubset::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < idx_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(idx_[i]);
    }
    out += ")";
    return out;
}

Permutation reduce(std::span<const int> word) {
    const std::size_t n = word.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return word[a] < word[b]; });
    std::vector<int> ranks(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (r > 0 && word[order[r]] == word[order[r - 1]]) {
            throw InvalidInputError("reduce: duplicate entry " + std::to_string(word[order[r]]));
        }
        ranks[order[r]] = static_cast<int>(r) + 1;
    }
    return Permutation::unchecked(std::move(ranks));
}

Permutation reduce(const std::vector<int>& word) { return reduce(std::span<const int>(word)); }

std::vector<int> subsequence(const Permutation& pi, const IndexSubset& at) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(at.size()));
    for (const int i : at.indices()) {
        if (i > pi.size()) {
            throw InvalidInputError("subsequence index " + std::to_string(i) +
                                    " exceeds permutation length " + std::to_string(pi.size()));
        }
        out.push_back(pi.value_at(i));
    }
    return out;
}

std::uint64_t permutation_count(int n) {
    return factorial_u64(n);
}

Permutation nth_permutation(int n, std::uint64_t rank) {
    const std::uint64_t total = permutation_count(n);
    if (rank >= total) {
        throw InvalidInputError("permutation rank " + std::to_string(rank) + " out of range for n=" +
                                std::to_string(n));
    }
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> out;
    out.reserve(pool.size());
    std::uint64_t f = total;
    for (int i = n; i >= 1; --i) {
        f /= static_cast<std::uint64_t>(i);
        const std::size_t pick = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return Permutation::unchecked(std::move(out));
}

PermutationRange::PermutationRange(int n, int cap) : n_(n) {
    if (n < 0) throw InvalidInputError("negative permutation length");
    if (n > cap) {
        throw CapacityError("enumeration of S_" + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(cap) + " (raise the cap to force it)");
    }
    count_ = permutation_count(n);
}

PermutationRange::iterator::iterator(int n, std::uint64_t remaining)
    : current_(Permutation::identity(n)), remaining_(remaining) {}

PermutationRange::iterator& PermutationRange::iterator::operator++() {
    if (remaining_ > 0) --remaining_;
    if (remaining_ > 0) {
        std::vector<int> work = current_.values();
        std::next_permutation(work.begin(), work.end());
        current_ = Permutation::unchecked(std::move(work));
    }
    return *this;
}

std::uint64_t subset_count(int n, int d) { return binomial_u64(n, d); }

SubsetRange::SubsetRange(int n, int d) : n_(n), d_(d) {
    if (n < 0 || d < 0 || d > n) {
        throw InvalidInputError("subset range requires 0 <= d <= n; got n=" + std::to_string(n) +
                                " d=" + std::to_string(d));
    }
    count_ = subset_count(n, d);
}

SubsetRange::iterator::iterator(int n, int d, std::uint64_t remaining)
    : n_(n), remaining_(remaining) {
    std::vector<int> first(static_cast<std::size_t>(d));
    std::iota(first.begin(), first.end(), 1);
    current_ = IndexSubset::unchecked(std::move(first));
}

SubsetRange::iterator& SubsetRange::iterator::operator++() {
    if (remaining_ > 0) --remaining_;
    if (remaining_ > 0) {
        std::vector<int> idx = current_.indices();
        const int d = static_cast<int>(idx.size());
        // advance the rightmost index that can still move
        int k = d - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == n_ - (d - 1 - k)) --k;
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < d; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        current_ = IndexSubset::unchecked(std::move(idx));
    }
    return *this;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    // rejection below 2^64 mod bound keeps the draw exactly uniform
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

Permutation random_permutation(int n, std::mt19937_64& rng) {
    if (n < 0) throw InvalidInputError("negative permutation length");
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    for (int i = n - 1; i >= 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(v[static_cast<std::size_t>(i)], v[j]);
    }
    return Permutation::unchecked(std::move(v));
}

}  // namespace permpat
