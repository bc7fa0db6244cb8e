#pragma once

#include "permpat/numeric.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace permpat {

enum class TheoremId { t1a, t1b, t2a, t2b, l3, fkg };
enum class Verdict { holds, violated, indeterminate };
enum class NumericMode { exact, floating };

std::string_view theorem_id_str(TheoremId id);   // "T1a" .. "L3", "FKG"
std::string_view verdict_str(Verdict v);         // "true", "false", "indeterminate"
std::string_view mode_str(NumericMode m);        // "exact", "float"

// Float-mode verdicts closer than this (in log space) are reported as
// indeterminate rather than guessed; rerun in exact mode instead.
inline constexpr double kIndeterminateBand = 1e-9;

// Both sides of one evaluated inequality plus the verdict. Logs are natural;
// a zero side renders as -inf. Exact strings are present when the side is a
// representable rational (integer-exponent products and sums).
struct InequalityReport {
    TheoremId theorem_id = TheoremId::t1a;
    std::vector<std::pair<std::string, std::string>> inputs;
    double lhs_log = 0;
    double rhs_log = 0;
    std::optional<std::string> lhs_exact;
    std::optional<std::string> rhs_exact;
    Verdict holds = Verdict::holds;
    double slack_log = 0;  // rhs_log - lhs_log; 0 when both sides are zero
    NumericMode mode = NumericMode::floating;
};

using ReportInputs = std::vector<std::pair<std::string, std::string>>;

// Assembles verdict and slack from float-mode logs, applying the
// indeterminate band and the zero conventions.
InequalityReport make_float_report(TheoremId id, ReportInputs inputs, double lhs_log,
                                   double rhs_log);

// Exact mode: the caller already compared lhs <= rhs exactly.
InequalityReport make_exact_report(TheoremId id, ReportInputs inputs, double lhs_log,
                                   double rhs_log, bool lhs_le_rhs, bool equal,
                                   std::optional<std::string> lhs_exact = std::nullopt,
                                   std::optional<std::string> rhs_exact = std::nullopt);

}  // namespace permpat
