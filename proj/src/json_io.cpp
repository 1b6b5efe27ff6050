#include "prodiff/json_io.hpp"

#include <limits>

namespace prodiff::json {

namespace {

std::size_t parse_index(const std::string& key, const std::string& where)
{
    if (key.empty() || key.size() > 9 || key.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(where + ": key \"" + key + "\" is not a nonnegative integer");
    }
    return static_cast<std::size_t>(std::stoul(key));
}

const Json& require(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where + ": missing key \"" + key + "\"");
    return *it;
}

std::size_t parse_order(const Json& j, const std::string& where)
{
    const Json& order = require(j, "order", where);
    if (!order.is_number_integer() || order.get<long long>() < 0) {
        throw ParseError(where + ".order: expected a nonnegative integer");
    }
    return order.get<std::size_t>();
}

void require_kind(const Json& j, const char* kind, const std::string& where)
{
    const Json& k = require(j, "kind", where);
    if (!k.is_string() || k.get<std::string>() != kind) {
        throw ParseError(where + ".kind: expected \"" + std::string(kind) + "\"");
    }
}

Json coeff_object(std::size_t first, std::span<const Rational> coeffs)
{
    Json obj = Json::object();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != 0) obj[std::to_string(first + i)] = to_string(coeffs[i]);
    }
    return obj;
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& where)
{
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
    throw ParseError(where + ": expected an exact rational string");
}

Json to_json(const FormalDiffeo& gamma)
{
    return {{"kind", "diffeo"}, {"order", gamma.order()}, {"coeffs", coeff_object(2, gamma.tail())}};
}

Json to_json(const FormalVectorField& field)
{
    return {{"kind", "field"}, {"order", field.order()}, {"coeffs", coeff_object(1, field.coeffs())}};
}

Json to_json(const UElement& u)
{
    Json comps = Json::object();
    for (const auto& [d, comp] : u.components()) {
        Json c = Json::object();
        for (const auto& [m, v] : comp) c[to_string(m)] = to_string(v);
        comps[std::to_string(d)] = std::move(c);
    }
    return {{"components", std::move(comps)}};
}

Json to_json(const NormValue& v)
{
    Json out = {{"value", to_string(v.value)}, {"kind", std::string(to_string(v.kind))}};
    if (v.witness_column) out["witness_column"] = *v.witness_column;
    return out;
}

Json to_json(const TriangularOperator& a)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.dim(); ++j) row.push_back(to_string(a.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Word& w) { return to_string(w); }

FormalDiffeo diffeo_from_json(const Json& j)
{
    const std::string where = "diffeo";
    require_kind(j, "diffeo", where);
    const std::size_t order = parse_order(j, where);
    if (order < 1) throw ParseError(where + ".order: must be >= 1");
    std::vector<Rational> tail(order - 1);
    const Json& coeffs = require(j, "coeffs", where);
    if (!coeffs.is_object()) throw ParseError(where + ".coeffs: expected an object");
    for (const auto& [key, value] : coeffs.items()) {
        const std::string at = where + ".coeffs[\"" + key + "\"]";
        const std::size_t idx = parse_index(key, at);
        if (idx < 2 || idx > order) {
            throw ParseError(at + ": index must lie in 2.." + std::to_string(order));
        }
        tail[idx - 2] = rational_from_json(value, at);
    }
    return FormalDiffeo(order, std::move(tail));
}

FormalVectorField field_from_json(const Json& j)
{
    const std::string where = "field";
    require_kind(j, "field", where);
    const std::size_t order = parse_order(j, where);
    std::vector<Rational> coeffs(order);
    const Json& obj = require(j, "coeffs", where);
    if (!obj.is_object()) throw ParseError(where + ".coeffs: expected an object");
    for (const auto& [key, value] : obj.items()) {
        const std::string at = where + ".coeffs[\"" + key + "\"]";
        const std::size_t idx = parse_index(key, at);
        if (idx < 1 || idx > order) {
            throw ParseError(at + ": index must lie in 1.." + std::to_string(order));
        }
        coeffs[idx - 1] = rational_from_json(value, at);
    }
    return FormalVectorField(order, std::move(coeffs));
}

UElement uelement_from_json(const Json& j)
{
    const std::string where = "uelement";
    const Json& comps = require(j, "components", where);
    if (!comps.is_object()) throw ParseError(where + ".components: expected an object");
    UElement u;
    for (const auto& [dkey, comp] : comps.items()) {
        const std::string at = where + ".components[\"" + dkey + "\"]";
        const std::size_t degree = parse_index(dkey, at);
        if (!comp.is_object()) throw ParseError(at + ": expected an object");
        for (const auto& [mkey, value] : comp.items()) {
            const std::string mat = at + "[\"" + mkey + "\"]";
            PBWMonomial m;
            try {
                m = parse_pbw_monomial(mkey);
            } catch (const ParseError& e) {
                throw ParseError(mat + ": " + e.what());
            }
            if (m.degree() != degree) {
                throw ParseError(mat + ": monomial has degree " + std::to_string(m.degree()) + ", not " +
                                 std::to_string(degree));
            }
            u.add(m, rational_from_json(value, mat));
        }
    }
    return u;
}

SeriesObject series_from_json(const Json& j)
{
    const Json& kind = require(j, "kind", "input");
    if (kind == "diffeo") return diffeo_from_json(j);
    if (kind == "field") return field_from_json(j);
    throw ParseError("input.kind: expected \"diffeo\" or \"field\"");
}

Json parse(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace prodiff::json
