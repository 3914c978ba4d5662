#pragma once

// JSON and CSV renderings of every report type. JSON documents carry
// "schema_version": 1 at the top level; field names are stable.

#include <string>
#include <vector>

#include "json.hpp"
#include "umb/ambient.hpp"
#include "umb/catalog.hpp"
#include "umb/immersion.hpp"
#include "umb/slicer.hpp"
#include "umb/verifier.hpp"

namespace umb {

inline constexpr int kSchemaVersion = 1;

nlohmann::ordered_json to_json(const Vec& v);
nlohmann::ordered_json to_json(const Mat& m);
nlohmann::ordered_json to_json(double x);  // non-finite values become "inf"/"-inf"/"nan"

nlohmann::ordered_json shape_summary_json(const ShapeReport& r, bool umbilic);
nlohmann::ordered_json to_json(const SliceResult& r, bool include_samples = true);
nlohmann::ordered_json to_json(const VerdictReport& r, bool include_runtime = true);
nlohmann::ordered_json to_json(const CartanAuditReport& r);
nlohmann::ordered_json catalog_entry_json(const CatalogEntry& e);

// Wraps a payload as {"schema_version": 1, "kind": kind, ...payload}.
nlohmann::ordered_json document(const std::string& kind, const nlohmann::ordered_json& payload);

std::string slice_samples_csv(const SliceResult& r);
std::string verdict_csv(const VerdictReport& r);

}  // namespace umb
