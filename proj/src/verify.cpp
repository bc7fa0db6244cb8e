#include "permpat/verify.hpp"

#include "permpat/errors.hpp"
#include "sharding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace permpat {

namespace {

std::vector<SubsetMask> location_masks(const std::vector<IndexSubset>& locations) {
    std::vector<SubsetMask> masks;
    masks.reserve(locations.size());
    for (const IndexSubset& b : locations) masks.push_back(b.mask());
    return masks;
}

std::string measure_echo(const SubsetMeasure& mu) {
    if (mu.kind() == SubsetMeasure::Kind::bernoulli) {
        return "bernoulli(" + rational_str(mu.p()) + ")";
    }
    return "table(" + std::to_string(mu.table().size()) + " entries)";
}

std::string chain_echo(const ChainSpec& chain) {
    // inner subsets only, in the CLI flag syntax: "2;2,3;2,3,5"
    std::string out;
    for (int i = 1; i < chain.d; ++i) {
        if (i > 1) out += ';';
        const auto& idx = chain.subsets[static_cast<std::size_t>(i)].indices();
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (j) out += ',';
            out += std::to_string(idx[j]);
        }
    }
    return out;
}

std::string rational_list_echo(const std::vector<Rational>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += rational_str(xs[i]);
    }
    return out;
}

void require_log_supermodular(const SubsetMeasure& mu) {
    if (mu.kind() != SubsetMeasure::Kind::table) return;  // Bernoulli qualifies by construction
    const auto report = is_log_supermodular(mu);
    if (!report.ok) {
        throw PreconditionError(
            "measure is not log-supermodular at pair " + IndexSubset::from_mask(report.violation->first).str() +
            ", " + IndexSubset::from_mask(report.violation->second).str());
    }
}

}  // namespace

InequalityReport verify_t1a(const Permutation& pi, int ell, int d, NumericMode mode) {
    const int n = pi.size();
    if (!(1 <= ell && ell < d && d < n)) {
        throw InvalidInputError("t1a needs 1 <= ell < d < n; got ell=" + std::to_string(ell) +
                                " d=" + std::to_string(d) + " n=" + std::to_string(n));
    }
    const std::uint64_t c_d = contained_patterns(pi, d).count();
    const std::uint64_t c_ell = contained_patterns(pi, ell).count();
    const BigInt base = BigInt(c_ell) * binomial(d, ell);

    const double lhs_log = log_big(BigInt(c_d));
    const double rhs_log = to_double(Rational(d, ell)) * log_big(base);
    ReportInputs inputs{{"pi", pi.str()}, {"ell", std::to_string(ell)}, {"d", std::to_string(d)}};

    if (mode == NumericMode::exact) {
        // compare c_d^ell <= base^d; the d/ell exponent never becomes a float
        const BigInt lhs_pow = big_pow(BigInt(c_d), static_cast<std::uint64_t>(ell));
        const BigInt rhs_pow = big_pow(base, static_cast<std::uint64_t>(d));
        return make_exact_report(TheoremId::t1a, std::move(inputs), lhs_log, rhs_log,
                                 lhs_pow <= rhs_pow, lhs_pow == rhs_pow, std::to_string(c_d),
                                 std::nullopt);
    }
    return make_float_report(TheoremId::t1a, std::move(inputs), lhs_log, rhs_log);
}

InequalityReport verify_t1b(const Permutation& pi, const Permutation& v, int ell,
                            NumericMode mode) {
    const int n = pi.size();
    const int d = v.size();
    if (!(1 < ell && ell < d && d <= n)) {
        throw InvalidInputError("t1b needs 1 < ell < |v| <= |pi|; got ell=" + std::to_string(ell) +
                                " |v|=" + std::to_string(d) + " |pi|=" + std::to_string(n));
    }
    const std::uint64_t lhs_count = occ(pi, v);
    const std::uint64_t denom = binomial_u64(d - 1, ell - 1);

    struct Term {
        std::uint64_t host_occ;
        std::uint64_t exponent;  // occ(v, w)
    };
    std::vector<Term> terms;
    bool rhs_zero = false;
    for (const Permutation& w : contained_patterns(v, ell).patterns) {
        const Term t{occ(pi, w), occ(v, w)};
        if (t.host_occ == 0) rhs_zero = true;
        terms.push_back(t);
    }

    ReportInputs inputs{{"pi", pi.str()}, {"v", v.str()}, {"ell", std::to_string(ell)}};
    const double lhs_log = log_big(BigInt(lhs_count));

    if (rhs_zero) {
        // containment transitivity forces occ(pi, v) = 0 here as well
        if (mode == NumericMode::exact) {
            return make_exact_report(TheoremId::t1b, std::move(inputs), lhs_log, kNegInf,
                                     lhs_count == 0, lhs_count == 0, std::to_string(lhs_count), "0");
        }
        return make_float_report(TheoremId::t1b, std::move(inputs), lhs_log, kNegInf);
    }

    double rhs_log_sum = 0;
    for (const Term& t : terms) {
        rhs_log_sum += static_cast<double>(t.exponent) * log_big(BigInt(t.host_occ));
    }
    const double rhs_log = rhs_log_sum / static_cast<double>(denom);

    if (mode == NumericMode::exact) {
        const BigInt lhs_pow = big_pow(BigInt(lhs_count), denom);
        BigInt rhs_pow = 1;
        for (const Term& t : terms) rhs_pow *= big_pow(BigInt(t.host_occ), t.exponent);
        return make_exact_report(TheoremId::t1b, std::move(inputs), lhs_log, rhs_log,
                                 lhs_pow <= rhs_pow, lhs_pow == rhs_pow,
                                 std::to_string(lhs_count), std::nullopt);
    }
    return make_float_report(TheoremId::t1b, std::move(inputs), lhs_log, rhs_log);
}

namespace {

void check_t2a_args(int n, const Permutation& v, const SubsetMeasure& mu) {
    if (v.size() < 1 || v.size() > n) {
        throw InvalidInputError("t2a needs 1 <= |v| <= n; got |v|=" + std::to_string(v.size()) +
                                " n=" + std::to_string(n));
    }
    if (mu.n() != n) {
        throw InvalidInputError("measure ground set [" + std::to_string(mu.n()) +
                                "] does not match n=" + std::to_string(n));
    }
}

OccurrenceCensus t2a_census(int n, const Permutation& v, CensusOptions opts) {
    opts.collect_classes = true;
    OccurrenceCensus cs = census(n, v, opts);
    if (!cs.classes_complete) {
        throw CapacityError("location-class census degraded to counts only; raise max_classes");
    }
    return cs;
}

}  // namespace

std::pair<Rational, Rational> t2a_lhs_routes_exact(int n, const Permutation& v,
                                                   const SubsetMeasure& mu,
                                                   const CensusOptions& census_opts) {
    check_t2a_args(n, v, mu);
    const OccurrenceCensus cs = t2a_census(n, v, census_opts);
    Rational grouped = 1;
    for (const auto& [locations, count] : cs.by_location_class) {
        grouped *= rational_pow(nu_exact(mu, location_masks(locations)), count);
    }
    Rational streamed = 1;
    for_each_permutation_range(n, 0, permutation_count(n), [&](const Permutation& pi) {
        const OccurrenceSet bs = occurrence_set(pi, v);
        if (bs.count() > 0) streamed *= nu_exact(mu, location_masks(bs.locations));
    });
    return {grouped, streamed};
}

std::pair<double, double> t2a_lhs_routes_log(int n, const Permutation& v, const SubsetMeasure& mu,
                                             const CensusOptions& census_opts) {
    check_t2a_args(n, v, mu);
    const OccurrenceCensus cs = t2a_census(n, v, census_opts);
    LogReal grouped = LogReal::one();
    for (const auto& [locations, count] : cs.by_location_class) {
        grouped *= LogReal::from_value(nu_value(mu, location_masks(locations)))
                       .pow(static_cast<double>(count));
    }
    LogReal streamed = LogReal::one();
    for_each_permutation_range(n, 0, permutation_count(n), [&](const Permutation& pi) {
        const OccurrenceSet bs = occurrence_set(pi, v);
        if (bs.count() > 0) streamed *= LogReal::from_value(nu_value(mu, location_masks(bs.locations)));
    });
    return {grouped.log(), streamed.log()};
}

InequalityReport verify_t2a(int n, const Permutation& v, const SubsetMeasure& mu, NumericMode mode,
                            const T2aOptions& opts) {
    check_t2a_args(n, v, mu);
    require_log_supermodular(mu);
    const int d = v.size();
    ReportInputs inputs{{"n", std::to_string(n)},
                        {"v", v.str()},
                        {"mu", measure_echo(mu)}};

    if (mode == NumericMode::exact) {
        Rational lhs;
        if (opts.check_partition) {
            const auto [grouped, streamed] = t2a_lhs_routes_exact(n, v, mu, opts.census);
            if (grouped != streamed) {
                throw std::logic_error("t2a grouped/streamed left sides disagree");
            }
            lhs = grouped;
        } else {
            const OccurrenceCensus cs = t2a_census(n, v, opts.census);
            lhs = 1;
            for (const auto& [locations, count] : cs.by_location_class) {
                lhs *= rational_pow(nu_exact(mu, location_masks(locations)), count);
            }
        }
        const Rational rhs = tail_mass_exact(mu, d);
        return make_exact_report(TheoremId::t2a, std::move(inputs), log_rational(lhs),
                                 log_rational(rhs), lhs <= rhs, lhs == rhs, rational_str(lhs),
                                 rational_str(rhs));
    }

    double lhs_log;
    if (opts.check_partition) {
        const auto [grouped_log, streamed_log] = t2a_lhs_routes_log(n, v, mu, opts.census);
        const double scale = std::max(1.0, std::abs(grouped_log));
        if (std::abs(grouped_log - streamed_log) > 1e-12 * scale) {
            throw std::logic_error("t2a grouped/streamed left sides disagree beyond 1e-12");
        }
        lhs_log = grouped_log;
    } else {
        const OccurrenceCensus cs = t2a_census(n, v, opts.census);
        LogReal lhs = LogReal::one();
        for (const auto& [locations, count] : cs.by_location_class) {
            lhs *= LogReal::from_value(nu_value(mu, location_masks(locations)))
                       .pow(static_cast<double>(count));
        }
        lhs_log = lhs.log();
    }
    const double rhs = tail_mass_value(mu, d);
    return make_float_report(TheoremId::t2a, std::move(inputs), lhs_log,
                             LogReal::from_value(rhs).log());
}

InequalityReport verify_lemma3(const Permutation& pi, int d, const SubsetMeasure& mu,
                               NumericMode mode) {
    const int n = pi.size();
    if (d < 1 || d > n) {
        throw InvalidInputError("lemma needs 1 <= d <= |pi|; got d=" + std::to_string(d) +
                                " |pi|=" + std::to_string(n));
    }
    if (mu.n() != n) {
        throw InvalidInputError("measure ground set [" + std::to_string(mu.n()) +
                                "] does not match |pi|=" + std::to_string(n));
    }
    require_log_supermodular(mu);
    const PatternSet cd = contained_patterns(pi, d);
    ReportInputs inputs{{"pi", pi.str()}, {"d", std::to_string(d)}, {"mu", measure_echo(mu)}};

    if (mode == NumericMode::exact) {
        Rational lhs = 1;
        for (const Permutation& w : cd.patterns) {
            lhs *= nu_exact(mu, location_masks(occurrence_set(pi, w).locations));
        }
        const Rational rhs = tail_mass_exact(mu, d);
        return make_exact_report(TheoremId::l3, std::move(inputs), log_rational(lhs),
                                 log_rational(rhs), lhs <= rhs, lhs == rhs, rational_str(lhs),
                                 rational_str(rhs));
    }
    LogReal lhs = LogReal::one();
    for (const Permutation& w : cd.patterns) {
        lhs *= LogReal::from_value(nu_value(mu, location_masks(occurrence_set(pi, w).locations)));
    }
    const double rhs = tail_mass_value(mu, d);
    return make_float_report(TheoremId::l3, std::move(inputs), lhs.log(),
                             LogReal::from_value(rhs).log());
}

InequalityReport verify_t2b(int n, const ChainMeasure& mu, const std::vector<Rational>& x,
                            NumericMode mode, int cap, int threads) {
    const ChainSpec& chain = mu.chain;
    const int d = chain.d;
    if (d < 2) throw InvalidInputError("t2b needs a chain with d >= 2");
    if (static_cast<int>(x.size()) != d - 1) {
        throw InvalidInputError("t2b needs x_2..x_d (" + std::to_string(d - 1) + " values); got " +
                                std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || x[i] >= 1) {
            throw InvalidInputError("x_" + std::to_string(i + 2) + " = " + rational_str(x[i]) +
                                    " must lie in (0,1)");
        }
        if (i > 0 && x[i] > x[i - 1]) {
            throw InvalidInputError("x must be non-increasing: x_" + std::to_string(i + 2) +
                                    " > x_" + std::to_string(i + 1));
        }
    }

    const auto f = conditional_avoidance_counts(n, chain, cap, threads);
    const auto x_of = [&](int ell) -> const Rational& {
        return x[static_cast<std::size_t>(ell - 2)];
    };
    const auto f_of = [&](int ell) { return f[static_cast<std::size_t>(ell - 2)]; };

    ReportInputs inputs{{"n", std::to_string(n)},
                        {"v", chain.induced.back().str()},
                        {"chain", chain_echo(chain)},
                        {"weights", rational_list_echo(mu.weights)},
                        {"x", rational_list_echo(x)}};

    if (mode == NumericMode::exact) {
        Rational lhs = 1;
        for (int i = 2; i <= d; ++i) {
            Rational s = 0;
            for (int l = 0; l < i; ++l) s += mu.weights[static_cast<std::size_t>(l)];
            for (int l = i; l <= d; ++l) s += x_of(l) * mu.weights[static_cast<std::size_t>(l)];
            lhs *= rational_pow(s, f_of(i));
        }
        Rational rhs = 0;
        Rational x_run = 1;
        for (int i = 0; i <= d; ++i) {
            if (i >= 2) x_run *= rational_pow(x_of(i), f_of(i));
            rhs += mu.weights[static_cast<std::size_t>(i)] * x_run;
        }
        return make_exact_report(TheoremId::t2b, std::move(inputs), log_rational(lhs),
                                 log_rational(rhs), lhs <= rhs, lhs == rhs, rational_str(lhs),
                                 rational_str(rhs));
    }

    std::vector<double> w(mu.weights.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = to_double(mu.weights[i]);
    double lhs_log = 0;
    for (int i = 2; i <= d; ++i) {
        double s = 0;
        for (int l = 0; l < i; ++l) s += w[static_cast<std::size_t>(l)];
        for (int l = i; l <= d; ++l) s += to_double(x_of(l)) * w[static_cast<std::size_t>(l)];
        lhs_log += static_cast<double>(f_of(i)) * std::log(s);
    }
    LogReal rhs = LogReal::zero();
    double x_log_run = 0;
    for (int i = 0; i <= d; ++i) {
        if (i >= 2) x_log_run += static_cast<double>(f_of(i)) * std::log(to_double(x_of(i)));
        if (w[static_cast<std::size_t>(i)] > 0) {
            rhs = log_space_add(rhs,
                                LogReal::from_log(std::log(w[static_cast<std::size_t>(i)]) + x_log_run));
        }
    }
    return make_float_report(TheoremId::t2b, std::move(inputs), lhs_log, rhs.log());
}

std::vector<ConjectureRow> conjecture_scan(int n, int d, const SubsetMeasure& mu,
                                           NumericMode mode) {
    if (d < 1 || d > n) {
        throw InvalidInputError("conjecture scan needs 1 <= d <= n; got d=" + std::to_string(d) +
                                " n=" + std::to_string(n));
    }
    T2aOptions opts;
    opts.check_partition = false;
    std::vector<ConjectureRow> rows;
    for (const Permutation& v : PermutationRange(d)) {
        const InequalityReport report = verify_t2a(n, v, mu, mode, opts);
        rows.push_back(ConjectureRow{v, report.slack_log, v.inversions()});
    }
    return rows;
}

void SweepSummary::add(const InequalityReport& report) {
    ++total;
    switch (report.holds) {
        case Verdict::holds: ++holds; break;
        case Verdict::violated: ++violated; break;
        case Verdict::indeterminate: ++indeterminate; break;
    }
    if (std::isfinite(report.slack_log)) min_slack_log = std::min(min_slack_log, report.slack_log);
    if (report.holds == Verdict::violated && !first_violation) first_violation = report;
}

void SweepSummary::merge(const SweepSummary& other) {
    total += other.total;
    holds += other.holds;
    violated += other.violated;
    indeterminate += other.indeterminate;
    min_slack_log = std::min(min_slack_log, other.min_slack_log);
    if (!first_violation) first_violation = other.first_violation;
}

namespace {

struct SweepShard {
    SweepSummary summary;
    std::vector<InequalityReport> reports;
};

SweepSummary finish_sweep(std::vector<SweepShard> shards, std::vector<InequalityReport>* collect) {
    SweepSummary out;
    for (auto& shard : shards) {
        out.merge(shard.summary);
        if (collect) {
            collect->insert(collect->end(), std::make_move_iterator(shard.reports.begin()),
                            std::make_move_iterator(shard.reports.end()));
        }
    }
    return out;
}

}  // namespace

SweepSummary sweep_t1a(int n, NumericMode mode, int threads,
                       std::vector<InequalityReport>* collect, int cap) {
    if (n < 3) throw InvalidInputError("t1a sweep needs n >= 3");
    if (n > cap) throw CapacityError("sweep over S_" + std::to_string(n) + " exceeds the cap");
    const std::uint64_t total = permutation_count(n);
    auto shards = detail::run_sharded<SweepShard>(total, threads, [&](std::uint64_t b, std::uint64_t e) {
        SweepShard shard;
        for_each_permutation_range(n, b, e, [&](const Permutation& pi) {
            for (int d = 2; d < n; ++d) {
                for (int ell = 1; ell < d; ++ell) {
                    InequalityReport report = verify_t1a(pi, ell, d, mode);
                    shard.summary.add(report);
                    if (collect) shard.reports.push_back(std::move(report));
                }
            }
        });
        return shard;
    });
    return finish_sweep(std::move(shards), collect);
}

SweepSummary sweep_t1b(int n, const std::vector<int>& pattern_lengths, NumericMode mode,
                       int threads, std::vector<InequalityReport>* collect, int cap) {
    if (n > cap) throw CapacityError("sweep over S_" + std::to_string(n) + " exceeds the cap");
    std::vector<std::vector<Permutation>> patterns;
    for (const int len : pattern_lengths) {
        if (len < 3 || len > n) {
            throw InvalidInputError("t1b sweep pattern length " + std::to_string(len) +
                                    " outside [3," + std::to_string(n) + "]");
        }
        std::vector<Permutation> of_len;
        for (const Permutation& v : PermutationRange(len)) of_len.push_back(v);
        patterns.push_back(std::move(of_len));
    }
    const std::uint64_t total = permutation_count(n);
    auto shards = detail::run_sharded<SweepShard>(total, threads, [&](std::uint64_t b, std::uint64_t e) {
        SweepShard shard;
        for_each_permutation_range(n, b, e, [&](const Permutation& pi) {
            for (const auto& of_len : patterns) {
                for (const Permutation& v : of_len) {
                    for (int ell = 2; ell < v.size(); ++ell) {
                        InequalityReport report = verify_t1b(pi, v, ell, mode);
                        shard.summary.add(report);
                        if (collect) shard.reports.push_back(std::move(report));
                    }
                }
            }
        });
        return shard;
    });
    return finish_sweep(std::move(shards), collect);
}

SweepSummary sweep_t2b_random(int n, const ChainSpec& chain, int trials, std::uint64_t seed,
                              std::vector<InequalityReport>* collect, int cap) {
    std::mt19937_64 rng(seed);
    const int d = chain.d;
    SweepSummary summary;
    for (int trial = 0; trial < trials; ++trial) {
        // integer draws keep the weights exactly normalized, so the trials
        // run in exact mode
        std::vector<Rational> weights(static_cast<std::size_t>(d) + 1);
        std::uint64_t total_weight = 0;
        std::vector<std::uint64_t> raw(static_cast<std::size_t>(d) + 1);
        for (auto& r : raw) {
            r = 1 + uniform_below(rng, 1000);
            total_weight += r;
        }
        for (std::size_t i = 0; i < raw.size(); ++i) {
            weights[i] = Rational(raw[i], total_weight);
        }
        std::vector<Rational> x(static_cast<std::size_t>(d) - 1);
        for (auto& xi : x) xi = Rational(5 + uniform_below(rng, 91), 100);  // in [0.05, 0.95]
        std::sort(x.begin(), x.end(), std::greater<>());

        InequalityReport report =
            verify_t2b(n, ChainMeasure::make(chain, std::move(weights)), x, NumericMode::exact, cap);
        report.inputs.emplace_back("trial", std::to_string(trial));
        summary.add(report);
        if (collect) collect->push_back(std::move(report));
    }
    return summary;
}

std::vector<SimulationRow> simulate_t1b(int n, int samples, const Permutation& v, int ell,
                                        std::uint64_t seed, std::vector<Permutation>* out_hosts) {
    if (!(1 < ell && ell < v.size() && v.size() <= n)) {
        throw InvalidInputError("simulation needs 1 < ell < |v| <= n");
    }
    std::mt19937_64 rng(seed);
    std::vector<SimulationRow> rows;
    rows.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        const Permutation pi = random_permutation(n, rng);
        const InequalityReport report = verify_t1b(pi, v, ell, NumericMode::exact);
        SimulationRow row;
        row.sample_index = static_cast<std::uint64_t>(s);
        row.lhs = std::stoull(*report.lhs_exact);
        row.rhs_log = report.rhs_log;
        row.verdict = report.holds;
        rows.push_back(row);
        if (out_hosts) out_hosts->push_back(pi);
    }
    return rows;
}

}  // namespace permpat
