#include "permpat/json_io.hpp"

#include "permpat/errors.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace permpat {

Json json_number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

Json report_json(const InequalityReport& report) {
    Json inputs = Json::object();
    for (const auto& [key, value] : report.inputs) inputs[key] = value;
    Json j{{"theorem_id", theorem_id_str(report.theorem_id)},
           {"inputs", std::move(inputs)},
           {"lhs_log", json_number(report.lhs_log)},
           {"rhs_log", json_number(report.rhs_log)},
           {"holds", verdict_str(report.holds)},
           {"slack_log", json_number(report.slack_log)},
           {"mode", mode_str(report.mode)}};
    if (report.lhs_exact) j["lhs_exact"] = *report.lhs_exact;
    if (report.rhs_exact) j["rhs_exact"] = *report.rhs_exact;
    return j;
}

Json census_json(const OccurrenceCensus& census) {
    Json by_count = Json::object();
    for (const auto& [r, f] : census.by_count) by_count[std::to_string(r)] = f;
    Json j{{"n", census.n}, {"v", census.pattern.str()}, {"by_count", std::move(by_count)}};
    if (census.classes_requested) {
        if (census.classes_complete) {
            Json classes = Json::array();
            for (const auto& [locations, count] : census.by_location_class) {
                Json locs = Json::array();
                for (const IndexSubset& b : locations) locs.push_back(b.indices());
                classes.push_back(Json{{"locations", std::move(locs)}, {"count", count}});
            }
            j["classes"] = std::move(classes);
        } else {
            j["classes_truncated"] = true;
        }
    }
    return j;
}

Json sweep_json(const SweepSummary& summary) {
    Json j{{"total", summary.total},
           {"holds", summary.holds},
           {"violated", summary.violated},
           {"indeterminate", summary.indeterminate},
           {"min_slack_log", json_number(summary.min_slack_log)}};
    if (summary.first_violation) j["first_violation"] = report_json(*summary.first_violation);
    return j;
}

Json boundedness_json(const BoundednessReport& report) {
    return Json{{"check", "boundedness"},
                {"entropy", json_number(report.entropy)},
                {"log_support", json_number(report.log_support)},
                {"slack", json_number(report.slack)},
                {"holds", report.holds}};
}

Json shearer_json(const ShearerReport& report) {
    return Json{{"check", "shearer"},
                {"t", report.t},
                {"lhs", json_number(report.lhs)},
                {"rhs", json_number(report.rhs)},
                {"slack", json_number(report.slack)},
                {"holds", report.holds}};
}

namespace {

Rational weight_from_json(const nlohmann::json& w) {
    if (w.is_string()) return parse_rational(w.get<std::string>());
    if (w.is_number_integer()) return Rational(w.get<long long>());
    if (w.is_number()) return Rational(w.get<double>());  // exact binary expansion
    throw InvalidInputError("weight must be a number or a rational string");
}

}  // namespace

SubsetMeasure measure_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("entries")) {
        throw InvalidInputError("measure JSON needs fields 'n' and 'entries'");
    }
    const int n = j.at("n").get<int>();
    std::map<SubsetMask, Rational> weights;
    for (const auto& entry : j.at("entries")) {
        const auto subset = entry.at("subset").get<std::vector<int>>();
        std::vector<int> sorted = subset;
        std::sort(sorted.begin(), sorted.end());
        const SubsetMask mask = IndexSubset::from_indices(sorted).mask();
        if (weights.count(mask)) {
            throw InvalidInputError("duplicate measure entry for subset " +
                                    IndexSubset::from_mask(mask).str());
        }
        weights[mask] = weight_from_json(entry.at("weight"));
    }
    return SubsetMeasure::from_table(n, std::move(weights));
}

JointDistribution joint_from_json(const nlohmann::json& j) {
    if (!j.contains("arity") || !j.contains("entries")) {
        throw InvalidInputError("joint JSON needs fields 'arity' and 'entries'");
    }
    const int arity = j.at("arity").get<int>();
    std::map<std::vector<int>, double> support;
    for (const auto& entry : j.at("entries")) {
        auto tuple = entry.at("tuple").get<std::vector<int>>();
        const double prob = entry.at("prob").get<double>();
        if (support.count(tuple)) throw InvalidInputError("duplicate joint entry");
        support[std::move(tuple)] = prob;
    }
    return JointDistribution::from_entries(arity, std::move(support));
}

std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    if (x == kPosInf) return "inf";
    if (x == kNegInf) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string report_csv_header() {
    return "theorem_id,inputs,lhs_log,rhs_log,holds,slack_log,mode,lhs_exact,rhs_exact";
}

std::string report_csv_row(const InequalityReport& report) {
    std::string inputs;
    for (const auto& [key, value] : report.inputs) {
        if (!inputs.empty()) inputs += ';';
        inputs += key + "=" + value;
    }
    std::string row;
    row += theorem_id_str(report.theorem_id);
    row += ',';
    row += csv_escape(inputs);
    row += ',';
    row += csv_number(report.lhs_log);
    row += ',';
    row += csv_number(report.rhs_log);
    row += ',';
    row += verdict_str(report.holds);
    row += ',';
    row += csv_number(report.slack_log);
    row += ',';
    row += mode_str(report.mode);
    row += ',';
    row += csv_escape(report.lhs_exact.value_or(""));
    row += ',';
    row += csv_escape(report.rhs_exact.value_or(""));
    return row;
}

}  // namespace permpat
