#pragma once

// JSON and CSV surfaces.
//
// Functional document:
//   {"terms":[{"set":[0,2],"coef":[3.0,0.0]}], "envelope":{"C":1.0,"p":0.0}}
// `coef` is [re, im]; sets must be strictly ascending; `envelope` is optional.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fockcalc/clark_ocone.hpp"
#include "fockcalc/covariance.hpp"
#include "fockcalc/functional.hpp"
#include "fockcalc/noise_bridge.hpp"

namespace fockcalc {

using Json = nlohmann::ordered_json;

struct FunctionalDocument {
  FockFunctional functional;
  std::optional<GrowthEnvelope> envelope;
};

Json subset_to_json(const SubsetIndex& sigma);
Json functional_to_json(const FockFunctional& phi, const std::optional<GrowthEnvelope>& envelope = std::nullopt);
std::string serialize_functional(const FockFunctional& phi,
                                 const std::optional<GrowthEnvelope>& envelope = std::nullopt);

/// Throws SchemaError (with line/column or field path), DuplicateKeyError or
/// NegativeIndexError.
FunctionalDocument parse_functional(std::string_view text);
FunctionalDocument functional_from_json(const Json& doc);

Json decomposition_to_json(const DecompositionReport& report);
Json covariance_to_json(const CovarianceReport& report);

/// {"check": name, "N": horizon, "max_gap": gap, "pass": gap <= tolerance}
Json verification_record(std::string_view check, int horizon, double max_gap, double tolerance);

/// `path_index,re,im` with a header row, one line per path.
void write_observable_csv(const PathObservable& obs, std::ostream& out);

}  // namespace fockcalc
