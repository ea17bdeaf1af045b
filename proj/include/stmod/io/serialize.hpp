#pragma once

#include "json.hpp"

#include "stmod/blocks.hpp"
#include "stmod/ghengine.hpp"
#include "stmod/meataxe.hpp"
#include "stmod/stable.hpp"

namespace stmod::io {

using json = nlohmann::json;

/// Bumped on any incompatible change to the report layout.
inline constexpr int kSchemaVersion = 1;

json to_json(const FieldSpec& f);
FieldSpec field_spec_from_json(const json& j);

/// {rows, cols, entries: [[coefficients of each entry]]}, row-major.
json to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const json& j);

/// {name, degree, order, generators: [[cycles]]}, points 1-based.
json to_json(const Group& g);
GroupPtr group_from_json(const json& j);
/// Generators in cycle notation; identical for identical inputs.
std::string canonical_form(const Group& g);

/// {field, group_ref, dim, gen_action}.
json to_json(const Module& m);
Module module_from_json(const GroupPtr& g, const json& j);

json to_json(const Decomposition& d);
/// Idempotents as sparse {element index: coefficients} maps.
json to_json(const GroupAlgebra& a, const BlockSet& b);
json to_json(const PeriodCertificate& c);
json to_json(const GhostCertificate& c);
json to_json(const Triangle& t);
json to_json(const UniversalGhost& u);
json to_json(const HeartData& h);
json to_json(const BatteryReport& b);
json to_json(const GhostCandidate& c);
json to_json(const Verdict& v);
json to_json(const ReductionReport& r);

}  // namespace stmod::io
