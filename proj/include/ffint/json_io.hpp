#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffint/expr.hpp"
#include "ffint/interval.hpp"
#include "ffint/stats.hpp"

namespace ffint {

using json = nlohmann::ordered_json;

namespace io {

inline FieldPtr field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p"))
        raise(ErrorCode::ConfigError, "field spec must be an object with \"p\"");
    std::uint64_t p = j.at("p").get<std::uint64_t>();
    std::uint32_t e = j.value("e", 1u);
    std::optional<std::vector<std::int64_t>> modulus;
    if (j.contains("modulus")) modulus = j.at("modulus").get<std::vector<std::int64_t>>();
    return Field::make(p, e, std::move(modulus));
}

inline json field_to_json(const Field* F) {
    json j;
    j["p"] = F->characteristic();
    j["e"] = F->ext_degree();
    if (F->ext_degree() > 1) {
        std::vector<std::uint32_t> mod(F->modulus().begin(), F->modulus().end());
        j["modulus"] = mod;
    }
    return j;
}

/// Field element literal: an integer, or a coordinate list (low power of u
/// first) for extension fields.
inline FieldElem elem_from_json(const Field* F, const json& j) {
    if (j.is_number_integer()) return F->from_int(j.get<std::int64_t>());
    if (j.is_array()) return F->elem(j.get<std::vector<std::int64_t>>());
    raise(ErrorCode::ConfigError, "field element must be an integer or a coordinate list");
}

inline json elem_to_json(const Field* F, const FieldElem& a) {
    if (F->ext_degree() == 1) return json(a.coord(0));
    std::vector<std::uint32_t> coords;
    for (std::uint32_t i = 0; i < F->ext_degree(); ++i) coords.push_back(a.coord(i));
    return json(coords);
}

/// Polynomial literal: coefficient list, low degree first; entries are
/// element literals.
inline Poly poly_from_json(const Field* F, const json& j) {
    if (!j.is_array()) raise(ErrorCode::ConfigError, "polynomial literal must be an array");
    std::vector<FieldElem> coeffs;
    coeffs.reserve(j.size());
    for (const auto& entry : j) coeffs.push_back(elem_from_json(F, entry));
    return Poly::from_elems(F, std::move(coeffs));
}

inline json poly_to_json(const Poly& h) {
    json arr = json::array();
    for (const auto& c : h.coeffs()) arr.push_back(elem_to_json(h.field(), c));
    return arr;
}

inline CurvePtr curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("field"))
        raise(ErrorCode::ConfigError, "curve spec needs \"kind\" and \"field\"");
    FieldPtr F = field_from_json(j.at("field"));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "projective_line") return Curve::projective_line(std::move(F));
    if (kind == "hyperelliptic") {
        if (!j.contains("fpoly"))
            raise(ErrorCode::ConfigError, "hyperelliptic curve spec needs \"fpoly\"");
        Poly f = poly_from_json(F.get(), j.at("fpoly"));
        return Curve::hyperelliptic(std::move(F), std::move(f));
    }
    raise(ErrorCode::ConfigError, "unknown curve kind: " + kind);
}

inline json curve_to_json(const CurvePtr& C) {
    json j;
    j["kind"] = C->is_p1() ? "projective_line" : "hyperelliptic";
    j["field"] = field_to_json(C->field());
    if (!C->is_p1()) j["fpoly"] = poly_to_json(C->fpoly());
    return j;
}

inline Place place_from_json(const Field* F, const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return Place::infinity();
    return Place::affine(elem_from_json(F, j));
}

inline Divisor divisor_from_json(const CurvePtr& C, const json& j) {
    if (!j.is_object() || !j.contains("support"))
        raise(ErrorCode::ConfigError, "divisor spec must be an object with \"support\"");
    std::vector<std::pair<Place, std::uint32_t>> support;
    for (const auto& entry : j.at("support")) {
        if (!entry.is_object() || !entry.contains("place") || !entry.contains("mult"))
            raise(ErrorCode::ConfigError, "divisor support entries are {\"place\", \"mult\"}");
        support.emplace_back(place_from_json(C->field(), entry.at("place")),
                             entry.at("mult").get<std::uint32_t>());
    }
    return Divisor(C, std::move(support));
}

inline json divisor_to_json(const Divisor& E) {
    json support = json::array();
    for (const auto& [place, mult] : E.support()) {
        json entry;
        entry["place"] =
            place.at_infinity ? json("inf") : elem_to_json(E.curve()->field(), place.point);
        entry["mult"] = mult;
        support.push_back(entry);
    }
    json j;
    j["support"] = support;
    return j;
}

/// Function literal: an expression string, a coefficient array (polynomial
/// in t or x), {"a": [...], "b": [...]} on hyperelliptic models, or
/// {"num": [...], "den": [{"point", "mult"}, ...]} on the projective line.
inline FunctionElem function_from_json(const CurvePtr& C, const json& j) {
    const Field* F = C->field();
    if (j.is_string()) return parse_function(C, j.get<std::string>());
    if (j.is_array()) {
        Poly num = poly_from_json(F, j);
        if (C->is_p1()) return FunctionElem::rational(C, std::move(num));
        return FunctionElem::hyper(C, std::move(num), Poly::zero(F));
    }
    if (j.is_object() && j.contains("a")) {
        Poly a = poly_from_json(F, j.at("a"));
        Poly b = j.contains("b") ? poly_from_json(F, j.at("b")) : Poly::zero(F);
        return FunctionElem::hyper(C, std::move(a), std::move(b));
    }
    if (j.is_object() && j.contains("num")) {
        Poly num = poly_from_json(F, j.at("num"));
        std::vector<std::pair<FieldElem, std::uint32_t>> den;
        if (j.contains("den"))
            for (const auto& entry : j.at("den"))
                den.emplace_back(elem_from_json(F, entry.at("point")),
                                 entry.at("mult").get<std::uint32_t>());
        return FunctionElem::rational(C, std::move(num), std::move(den));
    }
    raise(ErrorCode::ConfigError, "unrecognized function literal");
}

struct IntervalConfig {
    CurvePtr curve;
    Divisor E;
    FunctionElem f;
};

inline IntervalConfig interval_config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("curve") || !j.contains("E") || !j.contains("f"))
        raise(ErrorCode::ConfigError, "interval spec needs \"curve\", \"E\" and \"f\"");
    CurvePtr C = curve_from_json(j.at("curve"));
    Divisor E = divisor_from_json(C, j.at("E"));
    FunctionElem f = function_from_json(C, j.at("f"));
    return IntervalConfig{std::move(C), std::move(E), std::move(f)};
}

inline json interval_to_json(const Interval& I) {
    json j;
    j["curve"] = curve_to_json(I.curve());
    j["E"] = divisor_to_json(I.divisor());
    j["f"] = I.f().str();
    j["deg_E"] = I.divisor().degree();
    j["m"] = I.m();
    j["k"] = I.k();
    j["size"] = I.size();
    return j;
}

inline json mode_to_json(const IterMode& mode) {
    if (std::holds_alternative<ExhaustiveMode>(mode)) return json("exhaustive");
    const auto& s = std::get<SampleMode>(mode);
    json j;
    j["sample"] = {{"n", s.count}, {"seed", s.seed}};
    return j;
}

inline json hypotheses_to_json(const HypothesisReport& r) {
    json j;
    j["condition_i"] = r.condition_i;
    j["i_threshold"] = r.i_threshold;
    j["condition_ii"] = r.condition_ii;
    j["ii_threshold"] = r.ii_threshold;
    j["deg_E"] = r.deg_E;
    j["k"] = r.k;
    j["dim"] = r.dim;
    j["char_is_two"] = r.char_is_two;
    j["df_nonzero"] = r.df_nonzero;
    j["df_nonconstant"] = r.df_nonconstant;
    j["df_witness_zeros"] = r.df_witness_zeros;
    j["short"] = r.short_interval;
    j["riemann_roch_ok"] = r.riemann_roch_ok;
    return j;
}

inline std::string format_float(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

inline json report_to_json(const Interval& I, const Histogram& H, const CountReport& R) {
    json j;
    j["interval"] = interval_to_json(I);
    j["mode"] = mode_to_json(H.mode);
    json rows = json::array();
    for (const auto& row : R.rows) {
        json r;
        r["lambda"] = row.lambda.parts();
        r["observed"] = row.observed;
        r["expected"] = row.expected.str();
        r["deviation"] = row.deviation;
        r["normalized"] = row.normalized;
        rows.push_back(r);
    }
    j["rows"] = rows;
    j["nonseparable"] = R.nonseparable;
    j["total"] = R.total;
    if (R.fitted_c) j["fitted_c"] = *R.fitted_c;
    return j;
}

inline std::string report_to_csv(const Interval& I, const CountReport& R,
                                 bool with_header = true) {
    const IntervalSummary s = I.summary();
    std::string out;
    if (with_header) out += "q,p,e,genus,degE,m,k,lambda,observed,expected,deviation,normalized\n";
    const std::string prefix = std::to_string(s.q) + "," + std::to_string(s.p) + "," +
                               std::to_string(s.e) + "," + std::to_string(s.genus) + "," +
                               std::to_string(s.deg_E) + "," + std::to_string(s.m) + "," +
                               std::to_string(s.k) + ",";
    for (const auto& row : R.rows) {
        out += prefix + row.lambda.str() + "," + std::to_string(row.observed) + "," +
               row.expected.str() + "," + format_float(row.deviation) + "," +
               format_float(row.normalized) + "\n";
    }
    out += prefix + "nonseparable," + std::to_string(R.nonseparable) + ",,,\n";
    return out;
}

} // namespace io

} // namespace ffint
