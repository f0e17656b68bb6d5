#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "lacunary/bernstein.hpp"
#include "lacunary/circle.hpp"
#include "lacunary/equidistribution.hpp"
#include "lacunary/grid.hpp"
#include "lacunary/integer_set.hpp"
#include "lacunary/partition.hpp"
#include "lacunary/relations.hpp"
#include "lacunary/selection.hpp"
#include "lacunary/stats.hpp"

namespace lacunary {

using Json = nlohmann::json;

// Integers are written as decimal strings so that precision survives any
// JSON reader. Objects use sorted keys, so dumps are byte-stable.

Json to_json(const BigInt& value);
BigInt bigint_from_json(const Json& value);
Json to_json(const BigRational& value);

Json to_json(const IntegerSet& set);
IntegerSet integer_set_from_json(const Json& json);

Json to_json(const Partition& partition);
Partition partition_from_json(const Json& json);

Json to_json(const BlockDecomposition& decomposition, bool inline_elements = false);
Json to_json(const GrowthReport& report);
Json to_json(const BlockGrowthReport& report);

Json to_json(const Relation& relation);
/// Canonical sorted dump: {s, count, by_length: {m: count}, relations: [[...]]}.
Json to_json(const RelationSet& relations);
Json to_json(const IndependenceReport& report);

Json to_json(const Interval& interval);
Json to_json(const DensitySchedule& schedule);
Json to_json(const KatznelsonLiSchedule& schedule);
Json to_json(const BourgainDiagnostics& diagnostics);
Json to_json(const SelectionTrial& trial, bool inline_elements = true);
Json to_json(const DependenceEstimate& estimate);

Json to_json(const CirclePoint& point);
Json to_json(const WeylReport& report);
Json to_json(const GridSupNorm& norm);
Json to_json(const PsiValue& value);
Json to_json(const PsiSeries& series);
Json to_json(const SummingMatrixReport& report);
Json to_json(const ScanReport& report);
Json to_json(const BernsteinReport& report);
Json to_json(const PowerSumsetComparison& comparison);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& json);
Json parse_json(const std::string& text);

// CSV series for external plotting.
std::string to_csv(const WeylReport& report);
std::string to_csv(const PsiSeries& series);
std::string to_csv(const ScanReport& report);
std::string to_csv(const BernsteinReport& report);

}  // namespace lacunary
