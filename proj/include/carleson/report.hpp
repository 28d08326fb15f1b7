#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include <carleson/czdecomp.hpp>
#include <carleson/orlicz.hpp>
#include <carleson/pullback.hpp>

/// Structured result emission. JSON is the canonical format: insertion
/// ordered objects, doubles printed with 17 significant digits, non-finite
/// values as null. CSV is a flattened projection of the per-row tables for
/// plotting. Every payload carries a determinism hash computed over its
/// canonical serialization with volatile fields (timestamp, the hash
/// itself, wall-clock durations) excluded.

namespace carleson {

using Json = nlohmann::ordered_json;

/// Canonical compact serialization: no whitespace, insertion-ordered keys,
/// "%.17g" doubles, null for NaN / infinities.
std::string canonical_json(const Json& value);

/// FNV-1a 64-bit over a byte string.
std::uint64_t fnv1a64(std::string_view bytes);

/// 16-digit lowercase hex.
std::string hash_hex(std::uint64_t value);

/// Names of payload fields excluded from the determinism hash.
bool volatile_report_key(const std::string& key);

/// Computes the determinism hash of payload (top-level volatile keys
/// removed), then stamps `determinism_hash` and `timestamp` fields.
void finalize_report(Json& payload);

// --- JSON projections of the report types ----------------------------------

Json to_json(const Estimate& e);
Json to_json(const CarlesonProfile& p);
Json to_json(const ScalingReport& r);
Json to_json(const TailAuditReport& r);
Json to_json(const CZResult& r);
Json to_json(const PrecisionReport& r);
Json to_json(const ChainAuditReport& r);
Json to_json(const RemarkReport& r);
Json to_json(const CompactnessVerdict& v);

// --- CSV projections ---------------------------------------------------------

std::string to_csv(const CarlesonProfile& p);
std::string to_csv(const ScalingReport& r);
std::string to_csv(const TailAuditReport& r);
std::string to_csv(const CZResult& r);
std::string to_csv(const RemarkReport& r);
std::string to_csv(const CompactnessVerdict& v);

}  // namespace carleson
