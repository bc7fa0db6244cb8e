#include "permpat/entropy.hpp"

#include "permpat/errors.hpp"
#include "permpat/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace permpat {

namespace {

constexpr double kMassTolerance = 1e-12;

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

FiniteDistribution FiniteDistribution::from_probs(std::vector<double> probs) {
    double mass = 0;
    for (const double p : probs) {
        if (p < 0) throw InvalidInputError("negative probability " + std::to_string(p));
        mass += p;
    }
    if (std::abs(mass - 1.0) > kMassTolerance) {
        throw InvalidInputError("probabilities sum to " + std::to_string(mass) + ", expected 1");
    }
    return FiniteDistribution{std::move(probs)};
}

std::size_t FiniteDistribution::support_size() const {
    return static_cast<std::size_t>(
        std::count_if(probs.begin(), probs.end(), [](double p) { return p > kEntropyProbFloor; }));
}

double entropy(const FiniteDistribution& dist) {
    double h = 0;
    for (const double p : dist.probs) {
        if (p > kEntropyProbFloor) h -= p * std::log(p);
    }
    return h < 0 ? 0.0 : h;  // clip the -0.0 of a point mass
}

BoundednessReport boundedness_check(const FiniteDistribution& dist) {
    BoundednessReport r;
    r.entropy = entropy(dist);
    r.log_support = std::log(static_cast<double>(std::max<std::size_t>(1, dist.support_size())));
    r.slack = r.log_support - r.entropy;
    r.holds = r.entropy <= r.log_support + kMassTolerance;
    return r;
}

JointDistribution JointDistribution::from_entries(int arity,
                                                  std::map<std::vector<int>, double> support) {
    if (arity < 1) throw InvalidInputError("joint distribution arity must be >= 1");
    double mass = 0;
    for (const auto& [tuple, p] : support) {
        if (static_cast<int>(tuple.size()) != arity) {
            throw InvalidInputError("joint entry has " + std::to_string(tuple.size()) +
                                    " coordinates, expected " + std::to_string(arity));
        }
        if (p < 0) throw InvalidInputError("negative probability in joint distribution");
        mass += p;
    }
    if (std::abs(mass - 1.0) > kMassTolerance) {
        throw InvalidInputError("joint probabilities sum to " + std::to_string(mass) +
                                ", expected 1");
    }
    return JointDistribution{arity, std::move(support)};
}

JointDistribution marginal(const JointDistribution& joint, const std::vector<int>& coords) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < 1 || coords[i] > joint.arity) {
            throw InvalidInputError("marginal coordinate " + std::to_string(coords[i]) +
                                    " outside [1," + std::to_string(joint.arity) + "]");
        }
        if (i > 0 && coords[i] <= coords[i - 1]) {
            throw InvalidInputError("marginal coordinates must be strictly increasing");
        }
    }
    std::map<std::vector<int>, double> out;
    for (const auto& [tuple, p] : joint.support) {
        std::vector<int> key;
        key.reserve(coords.size());
        for (const int c : coords) key.push_back(tuple[static_cast<std::size_t>(c - 1)]);
        out[std::move(key)] += p;
    }
    JointDistribution m;
    m.arity = static_cast<int>(coords.size());
    m.support = std::move(out);
    return m;
}

namespace {

double joint_entropy(const JointDistribution& joint) {
    double h = 0;
    for (const auto& [tuple, p] : joint.support) {
        if (p > kEntropyProbFloor) h -= p * std::log(p);
    }
    return h < 0 ? 0.0 : h;
}

}  // namespace

ShearerReport shearer_check(const JointDistribution& joint,
                            const std::vector<std::vector<int>>& cover, int t) {
    if (t < 1) throw InvalidInputError("cover multiplicity t must be >= 1");
    std::vector<int> multiplicity(static_cast<std::size_t>(joint.arity) + 1, 0);
    for (const auto& coords : cover)
        for (const int c : coords) {
            if (c < 1 || c > joint.arity) {
                throw InvalidInputError("cover coordinate " + std::to_string(c) + " outside [1," +
                                        std::to_string(joint.arity) + "]");
            }
            ++multiplicity[static_cast<std::size_t>(c)];
        }
    for (int c = 1; c <= joint.arity; ++c) {
        if (multiplicity[static_cast<std::size_t>(c)] < t) {
            throw PreconditionError("coordinate " + std::to_string(c) + " is covered " +
                                    std::to_string(multiplicity[static_cast<std::size_t>(c)]) +
                                    " times, below t=" + std::to_string(t));
        }
    }

    ShearerReport r;
    r.t = t;
    r.lhs = static_cast<double>(t) * joint_entropy(joint);
    r.rhs = 0;
    for (const auto& coords : cover) {
        std::vector<int> sorted = coords;
        std::sort(sorted.begin(), sorted.end());
        r.rhs += joint_entropy(marginal(joint, sorted));
    }
    r.slack = r.rhs - r.lhs;
    r.holds = r.lhs <= r.rhs + kMassTolerance;
    return r;
}

FiniteDistribution random_distribution(std::mt19937_64& rng, int max_outcomes) {
    const int m = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_outcomes)));
    std::vector<double> w(static_cast<std::size_t>(m));
    double total = 0;
    for (double& x : w) {
        x = -std::log(1.0 - uniform01(rng));  // exponential
        total += x;
    }
    // occasionally zero out an entry to exercise the 0 log 0 convention
    if (m > 1 && uniform_below(rng, 4) == 0) {
        const auto k = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(m)));
        total -= w[k];
        w[k] = 0;
    }
    for (double& x : w) x /= total;
    return FiniteDistribution{std::move(w)};
}

JointDistribution random_joint_binary(std::mt19937_64& rng, int arity) {
    const std::uint64_t atoms = std::uint64_t{1} << arity;
    std::vector<double> w(static_cast<std::size_t>(atoms));
    double total = 0;
    for (double& x : w) {
        x = -std::log(1.0 - uniform01(rng));
        total += x;
    }
    std::map<std::vector<int>, double> support;
    for (std::uint64_t a = 0; a < atoms; ++a) {
        std::vector<int> tuple(static_cast<std::size_t>(arity));
        for (int i = 0; i < arity; ++i) tuple[static_cast<std::size_t>(i)] = (a >> i) & 1 ? 1 : 0;
        support[std::move(tuple)] = w[static_cast<std::size_t>(a)] / total;
    }
    JointDistribution j;
    j.arity = arity;
    j.support = std::move(support);
    return j;
}

}  // namespace permpat
