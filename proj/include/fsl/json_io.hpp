#pragma once

// JSON interchange for groups, subgroups and algebras.

#include <json.hpp>

#include "fsl/group.hpp"
#include "fsl/semilattice.hpp"

namespace fsl {

using Json = nlohmann::ordered_json;

Json to_json(const GroupSpec& g);
Json to_json(const GroupElement& e);
Json to_json(const Subgroup& s);
/// {"group":{"orders":[...]}, "carrier":[...], "meet":[[...]], "action":[[...]]}
Json to_json(const FSemilattice& a);

GroupSpec group_from_json(const Json& j);
/// Throws ShapeError on a malformed document; axioms are not checked here.
FSemilattice algebra_from_json(const Json& j);

/// Emits `j` with two-space indentation, keeping numeric rows on one line.
std::string dump(const Json& j);

}  // namespace fsl
