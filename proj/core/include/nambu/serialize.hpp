#pragma once

#include <nlohmann/json.hpp>

#include "nambu/integrate.hpp"
#include "nambu/invariants.hpp"

namespace nambu {

using Json = nlohmann::ordered_json;

// {label, mode, verdict, residual, tolerance, samples, seed, basis[, warnings]}
Json to_json(const InvariantReport& report);

// {method, dt, system_hash, quantities: [{label, initial, max_drift,
// time_of_max_drift}]}
Json to_json(const ConservationReport& report, const Trajectory& trajectory);

Json to_json(const VectorField3& field);

}  // namespace nambu
