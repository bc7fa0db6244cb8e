#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace permpat {

// Entropy terms below this probability are treated as zero to avoid
// log-of-tiny noise.
inline constexpr double kEntropyProbFloor = 1e-15;

// A distribution over finitely many (anonymous) outcomes. Outcome identity
// never enters entropy computations, so only the probabilities are kept.
struct FiniteDistribution {
    std::vector<double> probs;

    // Validates non-negativity and total mass 1 within 1e-12.
    static FiniteDistribution from_probs(std::vector<double> probs);

    std::size_t support_size() const;  // outcomes above the probability floor
};

// Entropy in nats, with the 0 log 0 = 0 convention.
double entropy(const FiniteDistribution& dist);

struct BoundednessReport {
    double entropy = 0;
    double log_support = 0;
    double slack = 0;  // log_support - entropy
    bool holds = false;
};

// H(X) <= log #supp(X).
BoundednessReport boundedness_check(const FiniteDistribution& dist);

// A random vector with finite support: maps m-tuples to probabilities.
struct JointDistribution {
    int arity = 0;
    std::map<std::vector<int>, double> support;

    static JointDistribution from_entries(int arity, std::map<std::vector<int>, double> support);
};

// Projection onto the given (1-based, strictly increasing) coordinates.
JointDistribution marginal(const JointDistribution& joint, const std::vector<int>& coords);

struct ShearerReport {
    int t = 0;
    double lhs = 0;  // t * H(X)
    double rhs = 0;  // sum over the cover of H(X(A))
    double slack = 0;
    bool holds = false;
};

// Shearer's lemma: if every coordinate is covered at least t times,
// t H(X) <= sum_{A in cover} H(X(A)). Cover multiplicity is validated.
ShearerReport shearer_check(const JointDistribution& joint,
                            const std::vector<std::vector<int>>& cover, int t);

// Seeded generators for the randomized property suites.
FiniteDistribution random_distribution(std::mt19937_64& rng, int max_outcomes);
JointDistribution random_joint_binary(std::mt19937_64& rng, int arity);

}  // namespace permpat
