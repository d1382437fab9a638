#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "pdecanon/canon.hpp"
#include "pdecanon/equiv.hpp"

namespace pdecanon {

using Json = nlohmann::ordered_json;

/// Equations use the explicit D[u,...] notation.
Json to_json(const DiffPoly& p);
Json to_json(const AffineTransform& t);
Json to_json(const DegeneracyReport& r);
Json to_json(const CanonReport& r);
Json to_json(const WitnessData& w);
Json to_json(const RefutationCertificate& c);
Json to_json(const MatchResult& r);

/// Reads the "witness" object written by to_json(WitnessData); coefficient
/// strings are parsed over `params`. Throws Error(InvalidDeclaration) on a
/// malformed object and SyntaxError on bad coefficient text.
WitnessData witness_from_json(const Json& j, std::span<const std::string> params);

}  // namespace pdecanon
