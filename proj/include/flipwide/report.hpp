#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "flipwide/flipwide.hpp"
#include "flipwide/oracles.hpp"

namespace flipwide {

using Json = nlohmann::json;

/// {"b_set", "flips", "radius", "trace", "verified"}; id arrays ascending,
/// flips sorted. Keys come out in that order because nlohmann::json sorts them.
Json result_to_json(const FlipWideResult& res, std::size_t radius, bool verified);

struct LoadedResult {
  FlipWideResult result;
  std::size_t radius = 0;
  bool verified = false;
};

/// Accepts either a bare result object or a report carrying it under "result".
/// Malformed documents raise InputError.
LoadedResult result_from_json(const Json& doc);

Json flip_to_json(const Flip& f);
Json witness_to_json(const WitnessSearch& search, bool valid);

}  // namespace flipwide
