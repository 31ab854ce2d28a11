#pragma once

/**
 * @file io.hpp
 * @brief JSON encodings of series, polynomials and support shapes.
 *
 * Series:     {"coeffs": ["c_1", ..., "c_T"], "precision": T}  (a bare array is also read)
 * Polynomial: {"terms": [{"i": 0, "j": 2, "c": "1"}, ...]}      (optional "dx", "dy" bounds)
 * Shape:      {"F": [[i, j], ...], "G": [[i, 0], ...]}
 *
 * Rationals are canonical strings "num" or "num/den".
 */

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algser/bivar_poly.hpp"
#include "algser/errors.hpp"
#include "algser/rat.hpp"
#include "algser/series.hpp"
#include "algser/support_shape.hpp"

namespace algser::io {

using json = nlohmann::ordered_json;

inline json parse_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(what + ": malformed JSON (" + e.what() + ")");
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

inline Rat rat_from_json(const json& j, const std::string& where) {
    if (!j.is_string()) throw input_error(where + ": rationals must be JSON strings");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
}

inline std::size_t nat_from_json(const json& j, const std::string& where) {
    if (!j.is_number_unsigned()) throw input_error(where + ": expected a natural number");
    return j.get<std::size_t>();
}

inline json rat_list(std::span<const Rat> v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

// ---- series ----

inline TruncatedSeries series_from_json(const json& j) {
    const json* arr = &j;
    std::optional<std::size_t> precision;
    if (j.is_object()) {
        if (!j.contains("coeffs")) throw input_error("series: missing \"coeffs\"");
        arr = &j.at("coeffs");
        if (j.contains("precision")) precision = nat_from_json(j.at("precision"), "series precision");
    }
    if (!arr->is_array()) throw input_error("series: coefficients must be an array");
    std::vector<Rat> tail;
    for (std::size_t n = 0; n < arr->size(); ++n)
        tail.push_back(rat_from_json((*arr)[n], "series coefficient c_" + std::to_string(n + 1)));
    if (precision && *precision != tail.size())
        throw input_error("series: precision " + std::to_string(*precision) + " does not match " +
                          std::to_string(tail.size()) + " coefficients");
    if (tail.empty()) throw input_error("series: at least one coefficient required");
    return TruncatedSeries::from_tail(tail);
}

inline json series_to_json(const TruncatedSeries& s) {
    json j;
    j["coeffs"] = rat_list(s.tail());
    j["precision"] = s.precision();
    return j;
}

// ---- polynomials ----

inline BivarPoly poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
        throw input_error("polynomial: expected an object with a \"terms\" array");
    BivarPoly p;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& t : j.at("terms")) {
        if (!t.is_object() || !t.contains("i") || !t.contains("j") || !t.contains("c"))
            throw input_error("polynomial: each term needs \"i\", \"j\" and \"c\"");
        const auto i = nat_from_json(t.at("i"), "term i");
        const auto jj = nat_from_json(t.at("j"), "term j");
        const Rat c = rat_from_json(t.at("c"), "coefficient of x^" + std::to_string(i) + " y^" + std::to_string(jj));
        if (c.is_zero()) throw input_error("polynomial: zero coefficient listed for x^" + std::to_string(i) +
                                           " y^" + std::to_string(jj));
        if (!seen.insert({i, jj}).second)
            throw input_error("polynomial: duplicate term x^" + std::to_string(i) + " y^" + std::to_string(jj));
        p.set(i, jj, c);
    }
    if (j.contains("dx") && nat_from_json(j.at("dx"), "dx") < p.dx())
        throw input_error("polynomial: a term exceeds the declared dx");
    if (j.contains("dy") && nat_from_json(j.at("dy"), "dy") < p.dy())
        throw input_error("polynomial: a term exceeds the declared dy");
    return p;
}

inline json poly_terms_json(const BivarPoly& p) {
    json a = json::array();
    for (const auto& [e, c] : p.terms()) a.push_back(json{{"i", e.i}, {"j", e.j}, {"c", c.str()}});
    return a;
}

inline json poly_to_json(const BivarPoly& p) {
    json j;
    j["terms"] = poly_terms_json(p);
    j["dx"] = p.dx();
    j["dy"] = p.dy();
    return j;
}

// ---- shapes ----

inline std::vector<Exponent> exponents_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw input_error("shape: \"" + what + "\" must be an array of [i, j] pairs");
    std::vector<Exponent> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw input_error("shape: \"" + what + "\" entries must be [i, j]");
        out.push_back({nat_from_json(e[0], what + " i"), nat_from_json(e[1], what + " j")});
    }
    return out;
}

inline SupportShape shape_from_json(const json& j) {
    if (!j.is_object() || !j.contains("F")) throw input_error("shape: expected an object with \"F\"");
    return {exponents_from_json(j.at("F"), "F"),
            j.contains("G") ? exponents_from_json(j.at("G"), "G") : std::vector<Exponent>{}};
}

inline json shape_to_json(const SupportShape& s) {
    json j;
    j["F"] = json::array();
    for (const auto& e : s.f()) j["F"].push_back({e.i, e.j});
    j["G"] = json::array();
    for (const auto& e : s.g()) j["G"].push_back({e.i, e.j});
    return j;
}

} // namespace algser::io
