#pragma once

// JSON (de)serialization. Complex matrices are {"rows","cols","re","im"},
// row-major. Observables carry a schema version "v": 1.

#include <json.hpp>

#include "gptnoise/compat.hpp"
#include "gptnoise/processes.hpp"

namespace gptnoise::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json to_json(const StateSpace& s);
StateSpace space_from_json(const json& j);

json to_json(const Effect& e);
/// Polytope effects may also be given as {"vertex_values": [...]}.
Effect effect_from_json(const json& j, const StateSpace& space);

json to_json(const Observable& a);
Observable observable_from_json(const json& j);

/// {"dimA","dimB","rho","effects"[,"outcomes"]}
json to_json(const PPOVM& a);
PPOVM ppovm_from_json(const json& j);

/// Accepts either the observable schema or the PPOVM schema.
Observable any_observable_from_json(const json& j);

json to_json(const ClassicalChannel& c);
ClassicalChannel channel_from_json(const json& j);

json to_json(const NoiseDecomposition& d);
json to_json(const JointObservable& g);
JointObservable joint_from_json(const json& j);
json to_json(const CompatibilityVerdict& v);

json read_file(const std::string& path);

}  // namespace gptnoise::io
