#pragma once

#include <json.hpp>

#include "jetham/equation_system.hpp"
#include "jetham/numeric.hpp"
#include "jetham/pdham.hpp"
#include "jetham/variational.hpp"

namespace jetham {

using Json = nlohmann::ordered_json;

// Dependent and independent indices are written 1-based, expressions in the
// plain format.

Json to_json(const EquationSystem& system);
/// Throws ParseError on bad residuals or unknowns, DomainError on bad layout.
EquationSystem system_from_json(const Json& j, const JetContext& ctx);

Json to_json(const CartanValuedForm& form, const JetContext& ctx);
Json to_json(const SourceForm& form, const JetContext& ctx);
Json to_json(const LegendreForm& form, const JetContext& ctx);
LegendreForm legendre_from_json(const Json& j, const JetContext& ctx, int order);

Json to_json(const HessianReport& report, const JetContext& ctx);
Json to_json(const ReducedSystem& reduced, const JetContext& ctx);
Json to_json(const ResidualReport& report);

}  // namespace jetham
