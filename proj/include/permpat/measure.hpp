#pragma once

#include "permpat/census.hpp"
#include "permpat/numeric.hpp"
#include "permpat/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace permpat {

// Subsets of [n] at the measure layer are fixed-width bitmasks (bit i-1 for
// index i); serialized at boundaries as sorted index lists.
using SubsetMask = std::uint32_t;

inline constexpr int kMaxMeasureGround = 20;

// A probability measure on the subset lattice P(n): either the Bernoulli
// product measure mu(A) = p^|A| (1-p)^(n-|A|) or an explicit table.
// Weights are exact rationals; float-mode callers convert on the fly.
class SubsetMeasure {
public:
    enum class Kind { bernoulli, table };

    static SubsetMeasure bernoulli(int n, const Rational& p);
    // Validates non-negative weights with total mass exactly 1.
    static SubsetMeasure from_table(int n, std::map<SubsetMask, Rational> weights);

    int n() const { return n_; }
    Kind kind() const { return kind_; }
    const Rational& p() const { return p_; }
    const std::map<SubsetMask, Rational>& table() const { return table_; }

    Rational mass(SubsetMask a) const;
    double mass_value(SubsetMask a) const;

private:
    SubsetMeasure(int n, Kind kind) : n_(n), kind_(kind) {}

    int n_ = 0;
    Kind kind_;
    Rational p_;
    std::vector<Rational> pow_p_, pow_q_;   // p^k, (1-p)^k for k <= n
    std::vector<double> pow_p_d_, pow_q_d_;
    std::map<SubsetMask, Rational> table_;
};

enum class NuMethod { automatic, enumeration, inclusion_exclusion };

// nu_B: the mu-mass of subsets A containing no blocker as a subset.
Rational nu_exact(const SubsetMeasure& mu, std::span<const SubsetMask> blockers,
                  NuMethod method = NuMethod::automatic);
double nu_value(const SubsetMeasure& mu, std::span<const SubsetMask> blockers,
                NuMethod method = NuMethod::automatic);

// Mass of { A : |A| < d }; the right side of the lattice inequalities.
Rational tail_mass_exact(const SubsetMeasure& mu, int d);
double tail_mass_value(const SubsetMeasure& mu, int d);

struct LogSupermodularReport {
    bool ok = true;
    std::optional<std::pair<SubsetMask, SubsetMask>> violation;  // first violating pair
};

// Exact pair scan of mu(x)mu(y) <= mu(x&y)mu(x|y) over all of P(n).
LogSupermodularReport is_log_supermodular(const SubsetMeasure& mu, int pair_scan_cap = 10);

// A probability measure on the chain A_0 < ... < A_d.
struct ChainMeasure {
    ChainSpec chain;
    std::vector<Rational> weights;  // size d+1, non-negative, sums to 1

    static ChainMeasure make(ChainSpec chain, std::vector<Rational> weights);
    static ChainMeasure uniform(ChainSpec chain);
};

enum class MonotoneDirection { increasing, decreasing };

// Generic correlation check on a finite sublattice of P(n) given explicitly.
// Elements must be closed under intersection and union; mu must be a
// log-supermodular probability measure on them; every function must be
// monotone in the declared direction. All validated up front by brute force.
struct FkgCheckInput {
    std::vector<SubsetMask> elements;
    std::map<SubsetMask, Rational> mu;
    std::vector<std::map<SubsetMask, Rational>> functions;  // non-negative tables
    MonotoneDirection direction = MonotoneDirection::increasing;
};

// Evaluates prod_g sum_x mu(x)g(x)  <=  sum_x mu(x) prod_g g(x), exactly.
InequalityReport fkg_check(const FkgCheckInput& input);

}  // namespace permpat
