#pragma once

#include "permpat/census.hpp"
#include "permpat/entropy.hpp"
#include "permpat/measure.hpp"
#include "permpat/report.hpp"
#include "permpat/verify.hpp"

#include <json.hpp>

#include <string>

namespace permpat {

using Json = nlohmann::ordered_json;

// Doubles that may be +-inf render as null (JSON has no infinities).
Json json_number(double x);

Json report_json(const InequalityReport& report);
Json census_json(const OccurrenceCensus& census);
Json sweep_json(const SweepSummary& summary);
Json boundedness_json(const BoundednessReport& report);
Json shearer_json(const ShearerReport& report);

// {n, entries: [{subset: [1,3], weight: "3/16" | 0.1875}]}
SubsetMeasure measure_from_json(const nlohmann::json& j);
// {arity, entries: [{tuple: [0,1,0], prob: 0.125}]}
JointDistribution joint_from_json(const nlohmann::json& j);

// CSV counterparts; headers first, one row per record, numbers formatted
// with round-trip precision.
std::string csv_number(double x);
std::string csv_escape(const std::string& field);
std::string report_csv_header();
std::string report_csv_row(const InequalityReport& report);

}  // namespace permpat
