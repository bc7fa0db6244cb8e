#include "permpat/measure.hpp"

#include "permpat/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace permpat {

namespace {

int popcount(SubsetMask m) { return std::popcount(m); }

std::string mask_str(SubsetMask m) { return IndexSubset::from_mask(m).str(); }

void require_ground(int n) {
    if (n < 0 || n > kMaxMeasureGround) {
        throw CapacityError("measure ground set [" + std::to_string(n) + "] outside supported range [0," +
                            std::to_string(kMaxMeasureGround) + "]");
    }
}

std::vector<SubsetMask> dedup(std::span<const SubsetMask> blockers) {
    std::vector<SubsetMask> b(blockers.begin(), blockers.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

bool blocked(SubsetMask a, const std::vector<SubsetMask>& blockers) {
    for (const SubsetMask b : blockers)
        if ((b & ~a) == 0) return true;  // b subset of a
    return false;
}

}  // namespace

SubsetMeasure SubsetMeasure::bernoulli(int n, const Rational& p) {
    require_ground(n);
    if (p <= 0 || p >= 1) throw InvalidInputError("Bernoulli parameter must lie in (0,1)");
    SubsetMeasure m(n, Kind::bernoulli);
    m.p_ = p;
    const Rational q = 1 - p;
    m.pow_p_.resize(static_cast<std::size_t>(n) + 1);
    m.pow_q_.resize(static_cast<std::size_t>(n) + 1);
    m.pow_p_d_.resize(static_cast<std::size_t>(n) + 1);
    m.pow_q_d_.resize(static_cast<std::size_t>(n) + 1);
    m.pow_p_[0] = m.pow_q_[0] = 1;
    for (int k = 1; k <= n; ++k) {
        m.pow_p_[static_cast<std::size_t>(k)] = m.pow_p_[static_cast<std::size_t>(k - 1)] * p;
        m.pow_q_[static_cast<std::size_t>(k)] = m.pow_q_[static_cast<std::size_t>(k - 1)] * q;
    }
    for (int k = 0; k <= n; ++k) {
        m.pow_p_d_[static_cast<std::size_t>(k)] = to_double(m.pow_p_[static_cast<std::size_t>(k)]);
        m.pow_q_d_[static_cast<std::size_t>(k)] = to_double(m.pow_q_[static_cast<std::size_t>(k)]);
    }
    return m;
}

SubsetMeasure SubsetMeasure::from_table(int n, std::map<SubsetMask, Rational> weights) {
    require_ground(n);
    const SubsetMask full = (SubsetMask{1} << n) - 1;
    Rational mass = 0;
    for (const auto& [a, w] : weights) {
        if ((a & ~full) != 0) {
            throw InvalidInputError("measure entry " + mask_str(a) + " is not a subset of [" +
                                    std::to_string(n) + "]");
        }
        if (w < 0) throw InvalidInputError("negative weight at " + mask_str(a));
        mass += w;
    }
    if (mass != 1) {
        throw InvalidInputError("measure weights sum to " + rational_str(mass) + ", expected 1");
    }
    SubsetMeasure m(n, Kind::table);
    m.table_ = std::move(weights);
    return m;
}

Rational SubsetMeasure::mass(SubsetMask a) const {
    if (kind_ == Kind::bernoulli) {
        const int k = popcount(a);
        return pow_p_[static_cast<std::size_t>(k)] * pow_q_[static_cast<std::size_t>(n_ - k)];
    }
    const auto it = table_.find(a);
    return it == table_.end() ? Rational(0) : it->second;
}

double SubsetMeasure::mass_value(SubsetMask a) const {
    if (kind_ == Kind::bernoulli) {
        const int k = popcount(a);
        return pow_p_d_[static_cast<std::size_t>(k)] * pow_q_d_[static_cast<std::size_t>(n_ - k)];
    }
    const auto it = table_.find(a);
    return it == table_.end() ? 0.0 : to_double(it->second);
}

namespace {

// Surviving-mask counts per cardinality; shared by the exact and float
// enumeration routes so they disagree only in the final arithmetic.
std::vector<std::uint64_t> survivor_counts(int n, const std::vector<SubsetMask>& blockers) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    const std::uint64_t states = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < states; ++a) {
        const auto mask = static_cast<SubsetMask>(a);
        if (!blocked(mask, blockers)) ++counts[static_cast<std::size_t>(popcount(mask))];
    }
    return counts;
}

// Inclusion-exclusion coefficients: signed counts per |union of S| over all
// sub-families S of the blockers.
std::vector<BigInt> ie_coefficients(int n, const std::vector<SubsetMask>& blockers) {
    const std::size_t r = blockers.size();
    if (r > 22) throw CapacityError("inclusion-exclusion over " + std::to_string(r) + " blockers");
    std::vector<BigInt> coef(static_cast<std::size_t>(n) + 1, 0);
    const std::uint64_t families = std::uint64_t{1} << r;
    for (std::uint64_t s = 0; s < families; ++s) {
        SubsetMask un = 0;
        for (std::size_t i = 0; i < r; ++i)
            if (s & (std::uint64_t{1} << i)) un |= blockers[i];
        const int sign = (std::popcount(s) % 2 == 0) ? 1 : -1;
        coef[static_cast<std::size_t>(popcount(un))] += sign;
    }
    return coef;
}

}  // namespace

Rational nu_exact(const SubsetMeasure& mu, std::span<const SubsetMask> raw_blockers, NuMethod method) {
    const std::vector<SubsetMask> blockers = dedup(raw_blockers);
    if (mu.kind() == SubsetMeasure::Kind::table) {
        Rational total = 0;
        for (const auto& [a, w] : mu.table())
            if (!blocked(a, blockers)) total += w;
        return total;
    }
    if (method == NuMethod::automatic)
        method = blockers.size() <= 16 ? NuMethod::inclusion_exclusion : NuMethod::enumeration;
    if (method == NuMethod::inclusion_exclusion) {
        const auto coef = ie_coefficients(mu.n(), blockers);
        Rational total = 0;
        for (int k = 0; k <= mu.n(); ++k) {
            if (coef[static_cast<std::size_t>(k)] == 0) continue;
            total += Rational(coef[static_cast<std::size_t>(k)]) *
                     rational_pow(mu.p(), static_cast<std::uint64_t>(k));
        }
        return total;
    }
    const auto counts = survivor_counts(mu.n(), blockers);
    Rational total = 0;
    for (int k = 0; k <= mu.n(); ++k) {
        if (counts[static_cast<std::size_t>(k)] == 0) continue;
        total += Rational(counts[static_cast<std::size_t>(k)]) * mu.mass(static_cast<SubsetMask>((1u << k) - 1));
    }
    return total;
}

double nu_value(const SubsetMeasure& mu, std::span<const SubsetMask> raw_blockers, NuMethod method) {
    const std::vector<SubsetMask> blockers = dedup(raw_blockers);
    if (mu.kind() == SubsetMeasure::Kind::table) {
        double total = 0;
        for (const auto& [a, w] : mu.table())
            if (!blocked(a, blockers)) total += to_double(w);
        return total;
    }
    if (method == NuMethod::automatic)
        method = blockers.size() <= 16 ? NuMethod::inclusion_exclusion : NuMethod::enumeration;
    if (method == NuMethod::inclusion_exclusion) {
        const auto coef = ie_coefficients(mu.n(), blockers);
        double total = 0;
        const double p = to_double(mu.p());
        for (int k = mu.n(); k >= 0; --k) {
            if (coef[static_cast<std::size_t>(k)] == 0) continue;
            total += coef[static_cast<std::size_t>(k)].convert_to<double>() * std::pow(p, k);
        }
        return total;
    }
    const auto counts = survivor_counts(mu.n(), blockers);
    double total = 0;
    for (int k = 0; k <= mu.n(); ++k) {
        if (counts[static_cast<std::size_t>(k)] == 0) continue;
        total += static_cast<double>(counts[static_cast<std::size_t>(k)]) *
                 mu.mass_value(static_cast<SubsetMask>((1u << k) - 1));
    }
    return total;
}

Rational tail_mass_exact(const SubsetMeasure& mu, int d) {
    if (d < 0 || d > mu.n() + 1) {
        throw InvalidInputError("tail mass cutoff " + std::to_string(d) + " outside [0," +
                                std::to_string(mu.n() + 1) + "]");
    }
    if (mu.kind() == SubsetMeasure::Kind::table) {
        Rational total = 0;
        for (const auto& [a, w] : mu.table())
            if (popcount(a) < d) total += w;
        return total;
    }
    Rational total = 0;
    for (int k = 0; k < d; ++k) {
        total += Rational(binomial(mu.n(), k)) * mu.mass(static_cast<SubsetMask>((1u << k) - 1));
    }
    return total;
}

double tail_mass_value(const SubsetMeasure& mu, int d) {
    return to_double(tail_mass_exact(mu, d));
}

LogSupermodularReport is_log_supermodular(const SubsetMeasure& mu, int pair_scan_cap) {
    if (mu.n() > pair_scan_cap) {
        throw CapacityError("log-supermodularity pair scan over P(" + std::to_string(mu.n()) +
                            ") exceeds the cap of " + std::to_string(pair_scan_cap));
    }
    const std::uint64_t states = std::uint64_t{1} << mu.n();
    std::vector<Rational> m(static_cast<std::size_t>(states));
    for (std::uint64_t a = 0; a < states; ++a) m[a] = mu.mass(static_cast<SubsetMask>(a));
    for (std::uint64_t x = 0; x < states; ++x) {
        for (std::uint64_t y = x + 1; y < states; ++y) {
            // comparable pairs satisfy the inequality with equality
            if ((x & y) == x || (x & y) == y) continue;
            if (m[x] * m[y] > m[x & y] * m[x | y]) {
                return {false, std::make_pair(static_cast<SubsetMask>(x), static_cast<SubsetMask>(y))};
            }
        }
    }
    return {true, std::nullopt};
}

ChainMeasure ChainMeasure::make(ChainSpec chain, std::vector<Rational> weights) {
    if (weights.size() != chain.subsets.size()) {
        throw InvalidInputError("chain measure needs " + std::to_string(chain.subsets.size()) +
                                " weights; got " + std::to_string(weights.size()));
    }
    Rational mass = 0;
    for (const Rational& w : weights) {
        if (w < 0) throw InvalidInputError("negative chain weight");
        mass += w;
    }
    if (mass != 1) {
        throw InvalidInputError("chain weights sum to " + rational_str(mass) + ", expected 1");
    }
    return ChainMeasure{std::move(chain), std::move(weights)};
}

ChainMeasure ChainMeasure::uniform(ChainSpec chain) {
    const auto k = chain.subsets.size();
    std::vector<Rational> w(k, Rational(1, static_cast<unsigned>(k)));
    return ChainMeasure{std::move(chain), std::move(w)};
}

InequalityReport fkg_check(const FkgCheckInput& input) {
    std::vector<SubsetMask> elems = input.elements;
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) {
        throw InvalidInputError("lattice elements must be distinct");
    }
    if (elems.empty()) throw InvalidInputError("empty lattice");
    const auto has = [&](SubsetMask m) {
        return std::binary_search(elems.begin(), elems.end(), m);
    };

    std::vector<Rational> mu(elems.size());
    Rational mass = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const auto it = input.mu.find(elems[i]);
        if (it == input.mu.end()) {
            throw InvalidInputError("measure is missing element " + mask_str(elems[i]));
        }
        if (it->second < 0) throw InvalidInputError("negative measure at " + mask_str(elems[i]));
        mu[i] = it->second;
        mass += mu[i];
    }
    if (mass != 1) {
        throw PreconditionError("measure mass is " + rational_str(mass) + ", expected 1");
    }

    // closure + log-supermodularity on the given elements
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            const SubsetMask meet = elems[i] & elems[j];
            const SubsetMask join = elems[i] | elems[j];
            if (!has(meet) || !has(join)) {
                throw PreconditionError("elements are not lattice-closed: " + mask_str(elems[i]) +
                                        " and " + mask_str(elems[j]));
            }
            const auto idx = [&](SubsetMask m) {
                return static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), m) -
                                                elems.begin());
            };
            if (mu[i] * mu[j] > mu[idx(meet)] * mu[idx(join)]) {
                throw PreconditionError("measure is not log-supermodular at pair " +
                                        mask_str(elems[i]) + ", " + mask_str(elems[j]));
            }
        }
    }

    std::vector<std::vector<Rational>> g(input.functions.size());
    for (std::size_t fi = 0; fi < input.functions.size(); ++fi) {
        g[fi].resize(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            const auto it = input.functions[fi].find(elems[i]);
            if (it == input.functions[fi].end()) {
                throw InvalidInputError("function " + std::to_string(fi) + " is missing element " +
                                        mask_str(elems[i]));
            }
            if (it->second < 0) {
                throw PreconditionError("function " + std::to_string(fi) + " is negative at " +
                                        mask_str(elems[i]));
            }
            g[fi][i] = it->second;
        }
        for (std::size_t i = 0; i < elems.size(); ++i) {
            for (std::size_t j = 0; j < elems.size(); ++j) {
                if (i == j || (elems[i] & elems[j]) != elems[i]) continue;  // need elems[i] subset of elems[j]
                const bool ok = input.direction == MonotoneDirection::increasing
                                    ? g[fi][i] <= g[fi][j]
                                    : g[fi][i] >= g[fi][j];
                if (!ok) {
                    throw PreconditionError("function " + std::to_string(fi) + " is not " +
                                            (input.direction == MonotoneDirection::increasing
                                                 ? "increasing"
                                                 : "decreasing") +
                                            " on pair " + mask_str(elems[i]) + " <= " +
                                            mask_str(elems[j]));
                }
            }
        }
    }

    Rational lhs = 1;
    for (const auto& table : g) {
        Rational expectation = 0;
        for (std::size_t i = 0; i < elems.size(); ++i) expectation += mu[i] * table[i];
        lhs *= expectation;
    }
    Rational rhs = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        Rational prod = mu[i];
        for (const auto& table : g) prod *= table[i];
        rhs += prod;
    }

    ReportInputs inputs{
        {"elements", std::to_string(elems.size())},
        {"functions", std::to_string(g.size())},
        {"direction", input.direction == MonotoneDirection::increasing ? "increasing" : "decreasing"},
    };
    return make_exact_report(TheoremId::fkg, std::move(inputs), log_rational(lhs), log_rational(rhs),
                             lhs <= rhs, lhs == rhs, rational_str(lhs), rational_str(rhs));
}

}  // namespace permpat
