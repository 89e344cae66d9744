#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ratlen/blaschke.hpp"
#include "ratlen/errors.hpp"
#include "ratlen/rational.hpp"

namespace ratlen {

/// Every function the toolkit can read from or write to disk. Rational
/// functions carry their structural form; Blaschke products stay exact
/// (converting them to a rational quotient would lose the boundary identity
/// their derivative evaluation relies on).
using FunctionVariant = std::variant<RationalFunction, BlaschkeProduct>;

/// The wire names of the four descriptor kinds.
inline std::string descriptor_kind(const FunctionVariant& f) {
    if (std::holds_alternative<BlaschkeProduct>(f)) return "blaschke";
    switch (std::get<RationalFunction>(f).form()) {
    case RationalForm::TaylorPoly: return "taylor";
    case RationalForm::PolyRatio: return "poly_ratio";
    case RationalForm::PoleBasis: return "pole_basis";
    }
    throw MalformedFunction("unrecognized rational form");
}

namespace detail {

inline cplx parse_cplx(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw MalformedFunction("complex values must be two-element [re, im] arrays");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline std::vector<cplx> parse_cplx_list(const nlohmann::json& j, const char* field) {
    if (!j.is_array())
        throw MalformedFunction(std::string("descriptor field '") + field +
                                "' must be an array of [re, im] pairs");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto& item : j) out.push_back(parse_cplx(item));
    return out;
}

inline nlohmann::json cplx_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json cplx_list_to_json(const std::vector<cplx>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const cplx& z : v) arr.push_back(cplx_to_json(z));
    return arr;
}

} // namespace detail

/// Parses one function descriptor. Structural validation (zeros inside the
/// disk, basis points sorted, denominators nonzero) is delegated to the
/// constructors, so their diagnostics surface unchanged.
inline FunctionVariant parse_function(const nlohmann::json& j) {
    std::string kind;
    try {
        kind = j.at("kind").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFunction(std::string("descriptor needs a string field 'kind': ") +
                                e.what());
    }
    try {
        if (kind == "taylor")
            return RationalFunction::taylor(detail::parse_cplx_list(j.at("coefficients"),
                                                                    "coefficients"));
        if (kind == "poly_ratio")
            return RationalFunction::poly_ratio(
                detail::parse_cplx_list(j.at("numerator"), "numerator"),
                detail::parse_cplx_list(j.at("denominator"), "denominator"));
        if (kind == "pole_basis")
            return RationalFunction::pole_basis(
                detail::parse_cplx(j.at("constant")),
                detail::parse_cplx_list(j.at("points"), "points"),
                detail::parse_cplx_list(j.at("coefficients"), "coefficients"));
        if (kind == "blaschke")
            return BlaschkeProduct(detail::parse_cplx_list(j.at("zeros"), "zeros"));
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFunction("descriptor of kind '" + kind + "' is missing fields: " +
                                e.what());
    }
    throw MalformedFunction("unknown descriptor kind '" + kind +
                            "' (expected pole_basis, poly_ratio, taylor, or blaschke)");
}

inline nlohmann::json to_json(const FunctionVariant& f) {
    nlohmann::json j;
    j["kind"] = descriptor_kind(f);
    if (const auto* B = std::get_if<BlaschkeProduct>(&f)) {
        j["zeros"] = detail::cplx_list_to_json(B->zeros());
        return j;
    }
    const auto& R = std::get<RationalFunction>(f);
    switch (R.form()) {
    case RationalForm::TaylorPoly:
        j["coefficients"] = detail::cplx_list_to_json(R.numerator());
        break;
    case RationalForm::PolyRatio:
        j["numerator"] = detail::cplx_list_to_json(R.numerator());
        j["denominator"] = detail::cplx_list_to_json(R.denominator());
        break;
    case RationalForm::PoleBasis:
        j["constant"] = detail::cplx_to_json(R.constant_term());
        j["points"] = detail::cplx_list_to_json(R.basis_points());
        j["coefficients"] = detail::cplx_list_to_json(R.coefficients());
        break;
    }
    return j;
}

inline FunctionVariant load_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open function descriptor '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFunction("descriptor '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_function(j);
}

inline void save_function(const FunctionVariant& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot write function descriptor '" + path + "'");
    out << to_json(f).dump(2) << '\n';
    if (!out) throw IoFailure("failed while writing function descriptor '" + path + "'");
}

} // namespace ratlen
