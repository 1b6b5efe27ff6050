#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "prodiff/freealg.hpp"
#include "prodiff/norms.hpp"
#include "prodiff/series.hpp"
#include "prodiff/triangular.hpp"

namespace prodiff::json {

using Json = nlohmann::json;

// Wire format shared by the CLI and the Python module:
//   {"kind":"diffeo","order":N,"coeffs":{"2":"1/2","3":"-4"}}
//   {"kind":"field","order":N,"coeffs":{"1":"1"}}
//   {"components":{"3":{"(3)":"1","(1,2)":"-1/2"}}}
// Rationals are strings "<int>" or "<int>/<posint>"; absent keys are zero.
// Writers omit zeros and rely on nlohmann's sorted object keys, so output is
// canonical. Readers throw ParseError naming the offending key.

Json to_json(const FormalDiffeo& gamma);
Json to_json(const FormalVectorField& field);
Json to_json(const UElement& u);
Json to_json(const NormValue& v);
/// Row-major array of rational strings.
Json to_json(const TriangularOperator& a);
Json to_json(const Word& w);

FormalDiffeo diffeo_from_json(const Json& j);
FormalVectorField field_from_json(const Json& j);
UElement uelement_from_json(const Json& j);

using SeriesObject = std::variant<FormalDiffeo, FormalVectorField>;
/// Dispatches on "kind".
SeriesObject series_from_json(const Json& j);

Rational rational_from_json(const Json& j, const std::string& where);

/// Parses text, turning nlohmann's exception into ParseError.
Json parse(const std::string& text);

}  // namespace prodiff::json
