#pragma once

#include <string>

#include <json.hpp>

#include "sfr/decompositions.hpp"
#include "sfr/intervals.hpp"
#include "sfr/oracles.hpp"
#include "sfr/types.hpp"

// Serialization boundary. JSON is the canonical machine format; CSV is a
// one-row-per-family regression artifact; text is for terminals. All output
// is deterministic: no timestamps, no locale-dependent formatting.
namespace sfr {

using ojson = nlohmann::ordered_json;

// %.12g with "inf"/"-inf"/"nan" spelled out; used by CSV and text writers.
std::string format_double(double x);

// A bipartite operator carries its factor dimensions alongside the row-major
// complex entries: {"m": 2, "n": 2, "entries": [[re, im], ...]}.
ojson operator_to_json(const BipartiteOperator& x);
BipartiteOperator operator_from_json(const ojson& j);

ojson vector_to_json(const Vector& v);
Vector vector_from_json(const ojson& j);

ojson verdict_to_json(const MembershipVerdict& v);

ojson decomposition_to_json(const ProductDecomposition& d);
ProductDecomposition decomposition_from_json(const ojson& j);

// Unresolved endpoints serialize as null values; infinities as "inf"/"-inf".
ojson endpoint_to_json(const Endpoint& e);
ojson report_to_json(const IntervalReport& report);

// Header + one row; columns follow the chain ordering of the hyperplane
// endpoints, blanks where unresolved.
std::string report_to_csv(const IntervalReport& report);
std::string report_to_text(const IntervalReport& report);

}  // namespace sfr
