#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "zerolab/distribution.hpp"

namespace zerolab {

using Json = nlohmann::ordered_json;

/// {"params": {...}, "provenance": str, "pmf": [...], "mean": ...}.
/// Exact rationals are written as decimal num/den strings.
Json to_json(const ZeroCountDistribution& dist);
Json to_json(const GofReport& report);
Json to_json(const FiltrationEstimate& estimate);
Json to_json(std::span<const PoissonRow> rows);
Json rational_json(const mpq_class& q);

/// Parses the JSON produced by to_json(ZeroCountDistribution).
ZeroCountDistribution distribution_from_json(const Json& json);

/// `count,probability` header plus one row per count.
std::string to_csv(const ZeroCountDistribution& dist);
std::string to_table(const ZeroCountDistribution& dist);

}  // namespace zerolab
