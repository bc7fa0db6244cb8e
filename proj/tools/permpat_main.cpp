#include "permpat/errors.hpp"
#include "permpat/json_io.hpp"
#include "permpat/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ctime>
#include <functional>
#include <iostream>
#include <fstream>
#include <optional>
#include <sstream>

namespace pp = permpat;

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;

struct GlobalOpts {
    std::string format = "json";
    std::string mode = "auto";
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
    int cap = 0;  // 0 keeps the per-command defaults
    bool no_timestamp = false;
    bool cases = false;  // stream per-case reports in sweeps
};

std::string iso_now() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

void emit_json(const GlobalOpts& opts, pp::Json j) {
    if (!opts.no_timestamp) j["generated_at"] = iso_now();
    std::cout << j.dump(2) << "\n";
}

void emit_csv(const std::vector<std::string>& lines) {
    for (const auto& line : lines) std::cout << line << "\n";
}

pp::NumericMode resolve_mode(const GlobalOpts& opts, bool rational_inputs) {
    if (opts.mode == "exact") return pp::NumericMode::exact;
    if (opts.mode == "float") return pp::NumericMode::floating;
    return rational_inputs ? pp::NumericMode::exact : pp::NumericMode::floating;
}

int verdict_exit(const pp::SweepSummary& summary) {
    if (summary.violated > 0) return 4;
    if (summary.indeterminate > 0) return 5;
    return 0;
}

int verdict_exit(const pp::InequalityReport& report) {
    if (report.holds == pp::Verdict::violated) return 4;
    if (report.holds == pp::Verdict::indeterminate) return 5;
    return 0;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.push_back("");
    return parts;
}

// "2;2,3;2,3,5" -> the inner subsets A_1..A_{d-1}; the empty set and [d] are
// implicit.
pp::ChainSpec parse_chain(const pp::Permutation& v, const std::string& flag) {
    std::vector<pp::IndexSubset> subsets;
    subsets.emplace_back();  // A_0
    if (!flag.empty()) {
        for (const std::string& part : split(flag, ';')) {
            std::vector<int> idx;
            for (const std::string& tok : split(part, ',')) {
                if (tok.empty()) throw pp::InvalidInputError("empty index in chain flag");
                idx.push_back(std::stoi(tok));
            }
            std::sort(idx.begin(), idx.end());
            subsets.push_back(pp::IndexSubset::from_indices(idx));
        }
    }
    std::vector<int> full(static_cast<std::size_t>(v.size()));
    std::iota(full.begin(), full.end(), 1);
    subsets.push_back(pp::IndexSubset::from_indices(full));
    return pp::induced_chain(v, std::move(subsets));
}

std::vector<pp::Rational> parse_rational_list(const std::string& flag) {
    std::vector<pp::Rational> out;
    for (const std::string& tok : split(flag, ',')) out.push_back(pp::parse_rational(tok));
    return out;
}

bool has_slash(const std::string& s) { return s.find('/') != std::string::npos; }

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pp::InvalidInputError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw pp::InvalidInputError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

pp::CensusOptions census_options(const GlobalOpts& opts) {
    pp::CensusOptions c;
    c.threads = opts.threads;
    if (opts.cap > 0) {
        c.class_cap = opts.cap;
        c.count_cap = opts.cap;
    }
    return c;
}

int sweep_cap(const GlobalOpts& opts) {
    return opts.cap > 0 ? opts.cap : pp::kDefaultEnumerationCap;
}

void emit_report(const GlobalOpts& opts, const pp::InequalityReport& report) {
    if (opts.format == "csv") {
        emit_csv({pp::report_csv_header(), pp::report_csv_row(report)});
    } else {
        emit_json(opts, pp::report_json(report));
    }
}

void emit_sweep(const GlobalOpts& opts, const pp::SweepSummary& summary,
                const std::vector<pp::InequalityReport>& cases, pp::ReportInputs echo) {
    if (opts.format == "csv") {
        std::vector<std::string> lines;
        if (opts.cases) {
            lines.push_back(pp::report_csv_header());
            for (const auto& r : cases) lines.push_back(pp::report_csv_row(r));
        } else {
            lines.push_back("total,holds,violated,indeterminate,min_slack_log");
            lines.push_back(std::to_string(summary.total) + "," + std::to_string(summary.holds) +
                            "," + std::to_string(summary.violated) + "," +
                            std::to_string(summary.indeterminate) + "," +
                            pp::csv_number(summary.min_slack_log));
        }
        emit_csv(lines);
        return;
    }
    pp::Json j = pp::Json::object();
    for (const auto& [key, value] : echo) j[key] = value;
    j["summary"] = pp::sweep_json(summary);
    if (opts.cases) {
        pp::Json arr = pp::Json::array();
        for (const auto& r : cases) arr.push_back(pp::report_json(r));
        j["cases"] = std::move(arr);
    }
    emit_json(opts, std::move(j));
}

// ---- subcommand wiring ----------------------------------------------------

using Action = std::function<int()>;

void add_occ(CLI::App& app, GlobalOpts& opts, Action& action) {
    auto* cmd = app.add_subcommand("occ", "count occurrences of a pattern in a permutation");
    auto perm_text = std::make_shared<std::string>();
    auto pattern_text = std::make_shared<std::string>();
    auto locations = std::make_shared<bool>(false);
    cmd->add_option("--perm", *perm_text, "host permutation")->required();
    cmd->add_option("--pattern", *pattern_text, "pattern permutation")->required();
    cmd->add_flag("--locations", *locations, "also list the occurrence index sets");
    cmd->callback([&, perm_text, pattern_text, locations] {
        action = [&, perm_text, pattern_text, locations]() -> int {
            const auto host = pp::Permutation::parse(*perm_text);
            const auto pattern = pp::Permutation::parse(*pattern_text);
            const pp::OccurrenceSet bs = pp::occurrence_set(host, pattern);
            if (opts.format == "csv") {
                std::vector<std::string> lines;
                if (*locations) {
                    lines.push_back("perm,pattern,occ,location");
                    for (const auto& b : bs.locations) {
                        std::string loc;
                        for (std::size_t i = 0; i < b.indices().size(); ++i) {
                            if (i) loc += ' ';
                            loc += std::to_string(b.indices()[i]);
                        }
                        lines.push_back(host.str() + "," + pattern.str() + "," +
                                        std::to_string(bs.count()) + "," + loc);
                    }
                    if (bs.locations.empty()) {
                        lines.push_back(host.str() + "," + pattern.str() + ",0,");
                    }
                } else {
                    lines.push_back("perm,pattern,occ");
                    lines.push_back(host.str() + "," + pattern.str() + "," +
                                    std::to_string(bs.count()));
                }
                emit_csv(lines);
            } else {
                pp::Json j{{"perm", host.str()}, {"pattern", pattern.str()}, {"occ", bs.count()}};
                if (*locations) {
                    pp::Json locs = pp::Json::array();
                    for (const auto& b : bs.locations) locs.push_back(b.indices());
                    j["locations"] = std::move(locs);
                }
                emit_json(opts, std::move(j));
            }
            return 0;
        };
    });
}

void add_census(CLI::App& app, GlobalOpts& opts, Action& action) {
    auto* cmd = app.add_subcommand("census", "whole-S_n occurrence census for one pattern");
    auto n = std::make_shared<int>(0);
    auto v_text = std::make_shared<std::string>();
    auto classes = std::make_shared<bool>(false);
    auto max_classes = std::make_shared<std::size_t>(1'000'000);
    cmd->add_option("--n", *n, "census length")->required();
    cmd->add_option("--v", *v_text, "pattern")->required();
    cmd->add_flag("--classes", *classes, "include the occurrence-location class table");
    cmd->add_option("--max-classes", *max_classes, "degrade to counts only beyond this many classes");
    cmd->callback([&, n, v_text, classes, max_classes] {
        action = [&, n, v_text, classes, max_classes]() -> int {
            pp::CensusOptions copts = census_options(opts);
            copts.collect_classes = *classes;
            copts.max_classes = *max_classes;
            const auto cs = pp::census(*n, pp::Permutation::parse(*v_text), copts);
            if (opts.format == "csv") {
                std::vector<std::string> lines{"kind,key,count"};
                for (const auto& [r, f] : cs.by_count) {
                    lines.push_back("count," + std::to_string(r) + "," + std::to_string(f));
                }
                for (const auto& [locs, f] : cs.by_location_class) {
                    std::string key;
                    for (const auto& b : locs) key += b.str();
                    lines.push_back("class," + pp::csv_escape(key) + "," + std::to_string(f));
                }
                emit_csv(lines);
            } else {
                emit_json(opts, pp::census_json(cs));
            }
            return 0;
        };
    });
}

void add_verify(CLI::App& app, GlobalOpts& opts, Action& action) {
    auto* cmd = app.add_subcommand("verify", "evaluate one of the inequalities");
    cmd->require_subcommand(1);

    // t1a ------------------------------------------------------------------
    {
        auto* sub = cmd->add_subcommand("t1a", "pattern-diversity bound c_d <= (c_ell C(d,ell))^(d/ell)");
        auto perm_text = std::make_shared<std::string>();
        auto ell = std::make_shared<int>(0);
        auto d = std::make_shared<int>(0);
        auto n = std::make_shared<int>(0);
        auto exhaustive = std::make_shared<bool>(false);
        sub->add_option("--perm", *perm_text, "host permutation");
        sub->add_option("--ell", *ell, "short pattern length");
        sub->add_option("--d", *d, "long pattern length");
        sub->add_option("--n", *n, "sweep length (with --exhaustive)");
        sub->add_flag("--exhaustive", *exhaustive, "all pi in S_n, all valid (ell,d)");
        sub->callback([&, perm_text, ell, d, n, exhaustive] {
            action = [&, perm_text, ell, d, n, exhaustive]() -> int {
                const pp::NumericMode mode = resolve_mode(opts, true);
                if (*exhaustive) {
                    std::vector<pp::InequalityReport> cases;
                    const auto summary = pp::sweep_t1a(*n, mode, opts.threads,
                                                       opts.cases ? &cases : nullptr, sweep_cap(opts));
                    emit_sweep(opts, summary, cases,
                               {{"theorem_id", "T1a"}, {"n", std::to_string(*n)}});
                    return verdict_exit(summary);
                }
                const auto report =
                    pp::verify_t1a(pp::Permutation::parse(*perm_text), *ell, *d, mode);
                emit_report(opts, report);
                return verdict_exit(report);
            };
        });
    }

    // t1b ------------------------------------------------------------------
    {
        auto* sub = cmd->add_subcommand("t1b", "occurrence bound via shorter patterns");
        auto perm_text = std::make_shared<std::string>();
        auto pattern_text = std::make_shared<std::string>();
        auto ell = std::make_shared<int>(0);
        auto n = std::make_shared<int>(0);
        auto lengths = std::make_shared<std::vector<int>>();
        auto exhaustive = std::make_shared<bool>(false);
        auto samples = std::make_shared<int>(0);
        sub->add_option("--perm", *perm_text, "host permutation");
        sub->add_option("--pattern", *pattern_text, "pattern v");
        sub->add_option("--ell", *ell, "short pattern length");
        sub->add_option("--n", *n, "host length for sweeps");
        sub->add_option("--pattern-length", *lengths, "pattern lengths for --exhaustive (repeatable)");
        sub->add_flag("--exhaustive", *exhaustive, "all pi in S_n, all v of the given lengths");
        sub->add_option("--samples", *samples, "seeded random hosts instead of a single --perm");
        sub->callback([&, perm_text, pattern_text, ell, n, lengths, exhaustive, samples] {
            action = [&, perm_text, pattern_text, ell, n, lengths, exhaustive, samples]() -> int {
                const pp::NumericMode mode = resolve_mode(opts, true);
                if (*exhaustive) {
                    std::vector<pp::InequalityReport> cases;
                    const auto summary =
                        pp::sweep_t1b(*n, *lengths, mode, opts.threads,
                                      opts.cases ? &cases : nullptr, sweep_cap(opts));
                    emit_sweep(opts, summary, cases,
                               {{"theorem_id", "T1b"}, {"n", std::to_string(*n)}});
                    return verdict_exit(summary);
                }
                if (*samples > 0) {
                    const auto v = pp::Permutation::parse(*pattern_text);
                    const auto rows = pp::simulate_t1b(*n, *samples, v, *ell, opts.seed);
                    pp::SweepSummary summary;
                    for (const auto& row : rows) {
                        pp::InequalityReport r;
                        r.holds = row.verdict;
                        r.slack_log = row.lhs == 0
                                          ? pp::kPosInf
                                          : row.rhs_log - std::log(static_cast<double>(row.lhs));
                        summary.add(r);
                    }
                    emit_sweep(opts, summary, {},
                               {{"theorem_id", "T1b"},
                                {"n", std::to_string(*n)},
                                {"v", v.str()},
                                {"ell", std::to_string(*ell)},
                                {"samples", std::to_string(*samples)},
                                {"seed", std::to_string(opts.seed)}});
                    return verdict_exit(summary);
                }
                const auto report = pp::verify_t1b(pp::Permutation::parse(*perm_text),
                                                   pp::Permutation::parse(*pattern_text), *ell, mode);
                emit_report(opts, report);
                return verdict_exit(report);
            };
        });
    }

    // t2a ------------------------------------------------------------------
    {
        auto* sub = cmd->add_subcommand("t2a", "occurrence-class correlation bound on P(n)");
        auto n = std::make_shared<int>(0);
        auto v_text = std::make_shared<std::string>();
        auto p_text = std::make_shared<std::string>();
        auto measure_file = std::make_shared<std::string>();
        auto d = std::make_shared<int>(0);
        auto exhaustive = std::make_shared<bool>(false);
        auto no_partition = std::make_shared<bool>(false);
        sub->add_option("--n", *n, "ground set size")->required();
        sub->add_option("--v", *v_text, "pattern");
        sub->add_option("--p", *p_text, "Bernoulli parameter (decimal or a/b)");
        sub->add_option("--measure", *measure_file, "explicit measure JSON file");
        sub->add_option("--d", *d, "pattern length for --exhaustive");
        sub->add_flag("--exhaustive", *exhaustive, "all v in S_d");
        sub->add_flag("--no-partition-check", *no_partition,
                      "skip the grouped-vs-streamed left-side agreement check");
        sub->callback([&, n, v_text, p_text, measure_file, d, exhaustive, no_partition] {
            action = [&, n, v_text, p_text, measure_file, d, exhaustive, no_partition]() -> int {
                if (p_text->empty() == measure_file->empty()) {
                    throw pp::InvalidInputError("give exactly one of --p or --measure");
                }
                const pp::SubsetMeasure mu =
                    measure_file->empty()
                        ? pp::SubsetMeasure::bernoulli(*n, pp::parse_probability(*p_text))
                        : pp::measure_from_json(load_json_file(*measure_file));
                const pp::NumericMode mode =
                    resolve_mode(opts, measure_file->empty() ? has_slash(*p_text) : true);
                pp::T2aOptions topts;
                topts.check_partition = !*no_partition;
                topts.census = census_options(opts);
                if (*exhaustive) {
                    pp::SweepSummary summary;
                    std::vector<pp::InequalityReport> cases;
                    for (const pp::Permutation& v : pp::PermutationRange(*d)) {
                        auto report = pp::verify_t2a(*n, v, mu, mode, topts);
                        summary.add(report);
                        if (opts.cases) cases.push_back(std::move(report));
                    }
                    emit_sweep(opts, summary, cases,
                               {{"theorem_id", "T2a"},
                                {"n", std::to_string(*n)},
                                {"d", std::to_string(*d)}});
                    return verdict_exit(summary);
                }
                const auto report =
                    pp::verify_t2a(*n, pp::Permutation::parse(*v_text), mu, mode, topts);
                emit_report(opts, report);
                return verdict_exit(report);
            };
        });
    }

    // lemma3 ---------------------------------------------------------------
    {
        auto* sub = cmd->add_subcommand("lemma3", "per-host correlation bound over C_d(pi)");
        auto perm_text = std::make_shared<std::string>();
        auto d = std::make_shared<int>(0);
        auto n = std::make_shared<int>(0);
        auto p_text = std::make_shared<std::string>();
        auto measure_file = std::make_shared<std::string>();
        auto exhaustive = std::make_shared<bool>(false);
        sub->add_option("--perm", *perm_text, "host permutation");
        sub->add_option("--d", *d, "pattern length")->required();
        sub->add_option("--n", *n, "sweep length (with --exhaustive)");
        sub->add_option("--p", *p_text, "Bernoulli parameter");
        sub->add_option("--measure", *measure_file, "explicit measure JSON file");
        sub->add_flag("--exhaustive", *exhaustive, "all pi in S_n");
        sub->callback([&, perm_text, d, n, p_text, measure_file, exhaustive] {
            action = [&, perm_text, d, n, p_text, measure_file, exhaustive]() -> int {
                if (p_text->empty() == measure_file->empty()) {
                    throw pp::InvalidInputError("give exactly one of --p or --measure");
                }
                const int ground = *exhaustive ? *n : pp::Permutation::parse(*perm_text).size();
                const pp::SubsetMeasure mu =
                    measure_file->empty()
                        ? pp::SubsetMeasure::bernoulli(ground, pp::parse_probability(*p_text))
                        : pp::measure_from_json(load_json_file(*measure_file));
                const pp::NumericMode mode =
                    resolve_mode(opts, measure_file->empty() ? has_slash(*p_text) : true);
                if (*exhaustive) {
                    pp::SweepSummary summary;
                    std::vector<pp::InequalityReport> cases;
                    for (const pp::Permutation& pi : pp::PermutationRange(*n, sweep_cap(opts))) {
                        auto report = pp::verify_lemma3(pi, *d, mu, mode);
                        summary.add(report);
                        if (opts.cases) cases.push_back(std::move(report));
                    }
                    emit_sweep(opts, summary, cases,
                               {{"theorem_id", "L3"},
                                {"n", std::to_string(*n)},
                                {"d", std::to_string(*d)}});
                    return verdict_exit(summary);
                }
                const auto report =
                    pp::verify_lemma3(pp::Permutation::parse(*perm_text), *d, mu, mode);
                emit_report(opts, report);
                return verdict_exit(report);
            };
        });
    }

    // t2b ------------------------------------------------------------------
    {
        auto* sub = cmd->add_subcommand("t2b", "chain inequality for conditional avoidance counts");
        auto v_text = std::make_shared<std::string>();
        auto chain_text = std::make_shared<std::string>();
        auto n = std::make_shared<int>(0);
        auto weights_text = std::make_shared<std::string>();
        auto uniform = std::make_shared<bool>(false);
        auto x_text = std::make_shared<std::string>();
        auto samples = std::make_shared<int>(0);
        sub->add_option("--v", *v_text, "pattern v = v^d")->required();
        sub->add_option("--chain", *chain_text,
                        "inner subsets A_1..A_{d-1}, e.g. \"2;2,3;2,3,5\"; {} and [d] are implicit")
            ->required();
        sub->add_option("--n", *n, "census length")->required();
        sub->add_option("--weights", *weights_text, "chain weights mu(A_0)..mu(A_d), comma separated");
        sub->add_flag("--uniform-weights", *uniform, "mu(A_i) = 1/(d+1)");
        sub->add_option("--x", *x_text, "x_2..x_d (single value broadcasts)");
        sub->add_option("--samples", *samples, "seeded random (weights, x) trials");
        sub->callback([&, v_text, chain_text, n, weights_text, uniform, x_text, samples] {
            action = [&, v_text, chain_text, n, weights_text, uniform, x_text, samples]() -> int {
                const auto v = pp::Permutation::parse(*v_text);
                pp::ChainSpec chain = parse_chain(v, *chain_text);
                if (*samples > 0) {
                    std::vector<pp::InequalityReport> cases;
                    const auto summary =
                        pp::sweep_t2b_random(*n, chain, *samples, opts.seed,
                                             opts.cases ? &cases : nullptr, sweep_cap(opts));
                    emit_sweep(opts, summary, cases,
                               {{"theorem_id", "T2b"},
                                {"n", std::to_string(*n)},
                                {"v", v.str()},
                                {"samples", std::to_string(*samples)},
                                {"seed", std::to_string(opts.seed)}});
                    return verdict_exit(summary);
                }
                if (weights_text->empty() == !*uniform) {
                    throw pp::InvalidInputError("give exactly one of --weights or --uniform-weights");
                }
                const int d = chain.d;
                pp::ChainMeasure mu =
                    *uniform ? pp::ChainMeasure::uniform(std::move(chain))
                             : pp::ChainMeasure::make(std::move(chain),
                                                      parse_rational_list(*weights_text));
                std::vector<pp::Rational> x = parse_rational_list(*x_text);
                if (x.size() == 1 && d > 2) x.assign(static_cast<std::size_t>(d) - 1, x[0]);
                const bool rational_inputs = *uniform || has_slash(*weights_text) || has_slash(*x_text);
                const pp::NumericMode mode = resolve_mode(opts, rational_inputs);
                const auto report = pp::verify_t2b(*n, mu, x, mode, sweep_cap(opts), opts.threads);
                emit_report(opts, report);
                return verdict_exit(report);
            };
        });
    }
}

void add_simulate(CLI::App& app, GlobalOpts& opts, Action& action) {
    auto* cmd = app.add_subcommand(
        "simulate", "seeded random hosts scored against the T1b bound (plot-ready CSV)");
    auto n = std::make_shared<int>(20);
    auto samples = std::make_shared<int>(200);
    auto patterns = std::make_shared<std::vector<std::string>>();
    auto ell = std::make_shared<int>(3);
    cmd->add_option("--n", *n, "host length (default 20)");
    cmd->add_option("--samples", *samples, "sample count (default 200)");
    cmd->add_option("--pattern", *patterns, "pattern (repeatable; defaults to 5274316 and 1234765)");
    cmd->add_option("--ell", *ell, "short pattern length (default 3)");
    cmd->callback([&, n, samples, patterns, ell] {
        action = [&, n, samples, patterns, ell]() -> int {
            std::vector<std::string> pattern_texts = *patterns;
            if (pattern_texts.empty()) pattern_texts = {"5274316", "1234765"};
            bool all_hold = true;
            std::vector<std::string> lines{"pattern,sample_index,lhs,rhs_log"};
            pp::Json rows = pp::Json::array();
            for (const std::string& text : pattern_texts) {
                const auto v = pp::Permutation::parse(text);
                for (const auto& row : pp::simulate_t1b(*n, *samples, v, *ell, opts.seed)) {
                    all_hold = all_hold && row.verdict == pp::Verdict::holds;
                    if (opts.format == "csv") {
                        lines.push_back(v.str() + "," + std::to_string(row.sample_index) + "," +
                                        std::to_string(row.lhs) + "," + pp::csv_number(row.rhs_log));
                    } else {
                        rows.push_back(pp::Json{{"pattern", v.str()},
                                                {"sample_index", row.sample_index},
                                                {"lhs", row.lhs},
                                                {"rhs_log", pp::json_number(row.rhs_log)}});
                    }
                }
            }
            if (opts.format == "csv") {
                emit_csv(lines);
            } else {
                emit_json(opts, pp::Json{{"n", *n},
                                         {"samples", *samples},
                                         {"ell", *ell},
                                         {"seed", opts.seed},
                                         {"rows", std::move(rows)}});
            }
            return all_hold ? 0 : 4;
        };
    });
}

void add_entropy(CLI::App& app, GlobalOpts& opts, Action& action) {
    auto* cmd = app.add_subcommand("entropy", "entropy boundedness and Shearer checks");
    cmd->require_subcommand(1);

    {
        auto* sub = cmd->add_subcommand("bound", "H(X) <= log #supp(X)");
        auto dist_file = std::make_shared<std::string>();
        auto probs_text = std::make_shared<std::string>();
        auto random_trials = std::make_shared<int>(0);
        auto max_outcomes = std::make_shared<int>(8);
        sub->add_option("--dist", *dist_file, "distribution JSON file {\"probs\": [...]}");
        sub->add_option("--probs", *probs_text, "inline probabilities, comma separated");
        sub->add_option("--random", *random_trials, "check this many seeded random distributions");
        sub->add_option("--max-outcomes", *max_outcomes, "outcome cap for --random");
        sub->callback([&, dist_file, probs_text, random_trials, max_outcomes] {
            action = [&, dist_file, probs_text, random_trials, max_outcomes]() -> int {
                if (*random_trials > 0) {
                    std::mt19937_64 rng(opts.seed);
                    int failures = 0;
                    double min_slack = pp::kPosInf;
                    for (int i = 0; i < *random_trials; ++i) {
                        const auto report =
                            pp::boundedness_check(pp::random_distribution(rng, *max_outcomes));
                        if (!report.holds) ++failures;
                        min_slack = std::min(min_slack, report.slack);
                    }
                    if (opts.format == "csv") {
                        emit_csv({"check,trials,failures,min_slack",
                                  "boundedness," + std::to_string(*random_trials) + "," +
                                      std::to_string(failures) + "," + pp::csv_number(min_slack)});
                    } else {
                        emit_json(opts, pp::Json{{"check", "boundedness"},
                                                 {"trials", *random_trials},
                                                 {"failures", failures},
                                                 {"min_slack", pp::json_number(min_slack)},
                                                 {"seed", opts.seed}});
                    }
                    return failures == 0 ? 0 : 4;
                }
                std::vector<double> probs;
                if (!probs_text->empty()) {
                    for (const auto& tok : split(*probs_text, ',')) probs.push_back(std::stod(tok));
                } else if (!dist_file->empty()) {
                    probs = load_json_file(*dist_file).at("probs").get<std::vector<double>>();
                } else {
                    throw pp::InvalidInputError("give one of --dist, --probs or --random");
                }
                const auto report = pp::boundedness_check(pp::FiniteDistribution::from_probs(probs));
                if (opts.format == "csv") {
                    emit_csv({"check,entropy,log_support,slack,holds",
                              "boundedness," + pp::csv_number(report.entropy) + "," +
                                  pp::csv_number(report.log_support) + "," +
                                  pp::csv_number(report.slack) + "," +
                                  (report.holds ? "true" : "false")});
                } else {
                    emit_json(opts, pp::boundedness_json(report));
                }
                return report.holds ? 0 : 4;
            };
        });
    }

    {
        auto* sub = cmd->add_subcommand("shearer", "t H(X) <= sum over a cover of H(X(A))");
        auto joint_file = std::make_shared<std::string>();
        auto cover_text = std::make_shared<std::string>();
        auto t = std::make_shared<int>(0);
        auto random_trials = std::make_shared<int>(0);
        auto arity = std::make_shared<int>(3);
        sub->add_option("--joint", *joint_file, "joint distribution JSON file");
        sub->add_option("--cover", *cover_text, "cover subsets, e.g. \"1,2;1,3;2,3\"");
        sub->add_option("--t", *t, "required cover multiplicity");
        sub->add_option("--random", *random_trials, "check this many seeded random binary joints");
        sub->add_option("--arity", *arity, "coordinate count for --random (default 3)");
        sub->callback([&, joint_file, cover_text, t, random_trials, arity] {
            action = [&, joint_file, cover_text, t, random_trials, arity]() -> int {
                std::vector<std::vector<int>> cover;
                if (!cover_text->empty()) {
                    for (const auto& part : split(*cover_text, ';')) {
                        std::vector<int> coords;
                        for (const auto& tok : split(part, ',')) coords.push_back(std::stoi(tok));
                        cover.push_back(std::move(coords));
                    }
                }
                if (*random_trials > 0) {
                    const int m = *arity;
                    if (cover.empty()) {
                        // default: all (m-1)-subsets, each coordinate covered m-1 times
                        for (int skip = m; skip >= 1; --skip) {
                            std::vector<int> coords;
                            for (int c = 1; c <= m; ++c)
                                if (c != skip) coords.push_back(c);
                            cover.push_back(std::move(coords));
                        }
                        if (*t == 0) *t = m - 1;
                    }
                    if (*t == 0) throw pp::InvalidInputError("--t is required with --cover");
                    std::mt19937_64 rng(opts.seed);
                    int failures = 0;
                    double min_slack = pp::kPosInf;
                    for (int i = 0; i < *random_trials; ++i) {
                        const auto report =
                            pp::shearer_check(pp::random_joint_binary(rng, m), cover, *t);
                        if (!report.holds) ++failures;
                        min_slack = std::min(min_slack, report.slack);
                    }
                    if (opts.format == "csv") {
                        emit_csv({"check,trials,failures,min_slack",
                                  "shearer," + std::to_string(*random_trials) + "," +
                                      std::to_string(failures) + "," + pp::csv_number(min_slack)});
                    } else {
                        emit_json(opts, pp::Json{{"check", "shearer"},
                                                 {"trials", *random_trials},
                                                 {"failures", failures},
                                                 {"min_slack", pp::json_number(min_slack)},
                                                 {"seed", opts.seed}});
                    }
                    return failures == 0 ? 0 : 4;
                }
                if (joint_file->empty() || cover.empty() || *t == 0) {
                    throw pp::InvalidInputError("shearer needs --joint, --cover and --t");
                }
                const auto joint = pp::joint_from_json(load_json_file(*joint_file));
                const auto report = pp::shearer_check(joint, cover, *t);
                if (opts.format == "csv") {
                    emit_csv({"check,t,lhs,rhs,slack,holds",
                              "shearer," + std::to_string(report.t) + "," +
                                  pp::csv_number(report.lhs) + "," + pp::csv_number(report.rhs) +
                                  "," + pp::csv_number(report.slack) + "," +
                                  (report.holds ? "true" : "false")});
                } else {
                    emit_json(opts, pp::shearer_json(report));
                }
                return report.holds ? 0 : 4;
            };
        });
    }
}

void add_conjecture(CLI::App& app, GlobalOpts& opts, Action& action) {
    auto* cmd = app.add_subcommand(
        "conjecture", "T2a slack vs. disorder for every v in S_d (exploratory table)");
    auto n = std::make_shared<int>(0);
    auto d = std::make_shared<int>(0);
    auto p_text = std::make_shared<std::string>();
    cmd->add_option("--n", *n, "ground set size")->required();
    cmd->add_option("--d", *d, "pattern length")->required();
    cmd->add_option("--p", *p_text, "Bernoulli parameter")->required();
    cmd->callback([&, n, d, p_text] {
        action = [&, n, d, p_text]() -> int {
            const auto mu = pp::SubsetMeasure::bernoulli(*n, pp::parse_probability(*p_text));
            const pp::NumericMode mode = resolve_mode(opts, has_slash(*p_text));
            const auto rows = pp::conjecture_scan(*n, *d, mu, mode);
            if (opts.format == "csv") {
                std::vector<std::string> lines{"v,slack_log,inversions"};
                for (const auto& row : rows) {
                    lines.push_back(row.v.str() + "," + pp::csv_number(row.slack_log) + "," +
                                    std::to_string(row.inversions));
                }
                emit_csv(lines);
            } else {
                pp::Json arr = pp::Json::array();
                for (const auto& row : rows) {
                    arr.push_back(pp::Json{{"v", row.v.str()},
                                           {"slack_log", pp::json_number(row.slack_log)},
                                           {"inversions", row.inversions}});
                }
                emit_json(opts, pp::Json{{"n", *n},
                                         {"d", *d},
                                         {"p", *p_text},
                                         {"rows", std::move(arr)}});
            }
            return 0;
        };
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permpat: permutation pattern containment statistics and inequality checks"};
    app.fallthrough();

    GlobalOpts opts;
    if (const char* env = std::getenv("PERMPAT_THREADS")) {
        opts.threads = std::max(1, std::atoi(env));
    }
    app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--mode", opts.mode, "numeric mode")->check(CLI::IsMember({"auto", "exact", "float"}));
    app.add_option("--seed", opts.seed, "seed for randomized commands (fixed default)");
    app.add_option("--threads", opts.threads, "worker thread bound (env PERMPAT_THREADS)");
    app.add_option("--cap", opts.cap, "raise the enumeration caps (default: per-command)");
    app.add_flag("--no-timestamp", opts.no_timestamp, "suppress the generated_at field");
    app.add_flag("--cases", opts.cases, "stream per-case reports in sweeps");
    app.require_subcommand(1);

    Action action;
    add_occ(app, opts, action);
    add_census(app, opts, action);
    add_verify(app, opts, action);
    add_simulate(app, opts, action);
    add_entropy(app, opts, action);
    add_conjecture(app, opts, action);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const pp::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const pp::InvalidInputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const pp::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
