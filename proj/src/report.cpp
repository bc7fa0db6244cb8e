#include "permpat/report.hpp"

#include <cmath>

namespace permpat {

std::string_view theorem_id_str(TheoremId id) {
    switch (id) {
        case TheoremId::t1a: return "T1a";
        case TheoremId::t1b: return "T1b";
        case TheoremId::t2a: return "T2a";
        case TheoremId::t2b: return "T2b";
        case TheoremId::l3: return "L3";
        case TheoremId::fkg: return "FKG";
    }
    return "?";
}

std::string_view verdict_str(Verdict v) {
    switch (v) {
        case Verdict::holds: return "true";
        case Verdict::violated: return "false";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

std::string_view mode_str(NumericMode m) {
    return m == NumericMode::exact ? "exact" : "float";
}

namespace {

double slack_of(double lhs_log, double rhs_log) {
    if (lhs_log == kNegInf && rhs_log == kNegInf) return 0.0;
    return rhs_log - lhs_log;
}

}  // namespace

InequalityReport make_float_report(TheoremId id, ReportInputs inputs, double lhs_log,
                                   double rhs_log) {
    InequalityReport r;
    r.theorem_id = id;
    r.inputs = std::move(inputs);
    r.lhs_log = lhs_log;
    r.rhs_log = rhs_log;
    r.mode = NumericMode::floating;
    r.slack_log = slack_of(lhs_log, rhs_log);
    if (lhs_log == kNegInf) {
        r.holds = Verdict::holds;  // 0 <= anything (incl. the both-zero case)
    } else if (rhs_log == kNegInf) {
        r.holds = Verdict::violated;
    } else if (std::abs(rhs_log - lhs_log) < kIndeterminateBand) {
        r.holds = Verdict::indeterminate;
    } else {
        r.holds = lhs_log < rhs_log ? Verdict::holds : Verdict::violated;
    }
    return r;
}

InequalityReport make_exact_report(TheoremId id, ReportInputs inputs, double lhs_log,
                                   double rhs_log, bool lhs_le_rhs, bool equal,
                                   std::optional<std::string> lhs_exact,
                                   std::optional<std::string> rhs_exact) {
    InequalityReport r;
    r.theorem_id = id;
    r.inputs = std::move(inputs);
    r.lhs_log = lhs_log;
    r.rhs_log = rhs_log;
    r.lhs_exact = std::move(lhs_exact);
    r.rhs_exact = std::move(rhs_exact);
    r.mode = NumericMode::exact;
    r.holds = lhs_le_rhs ? Verdict::holds : Verdict::violated;
    r.slack_log = equal ? 0.0 : slack_of(lhs_log, rhs_log);
    return r;
}

}  // namespace permpat
