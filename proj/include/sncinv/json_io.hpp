#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "sncinv/blowup.hpp"
#include "sncinv/errors.hpp"
#include "sncinv/invariant.hpp"
#include "sncinv/model.hpp"

namespace sncinv {

using Json = nlohmann::json;

namespace jsondetail {

inline const Json& need(const Json& j, const char* field, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    auto it = j.find(field);
    if (it == j.end()) throw ParseError(path + ": missing field '" + field + "'");
    return *it;
}

inline int need_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
    return j.get<int>();
}

inline Rational need_rational(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path + ": expected a rational as string");
    auto r = parse_rational(j.get<std::string>());
    if (!r) throw ParseError(path + ": malformed rational '" + j.get<std::string>() + "'");
    return *r;
}

} // namespace jsondetail

// ---- LPoly: {"<degree>": "<rational>"} --------------------------------

inline Json lpoly_to_json(const LPoly& p) {
    Json j = Json::object();
    for (const auto& [d, c] : p.coeffs()) j[std::to_string(d)] = format_rational(c);
    return j;
}

inline LPoly lpoly_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": expected an object of degree -> rational");
    LPoly p;
    for (const auto& [key, val] : j.items()) {
        if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(path + ": bad degree '" + key + "' (negative or non-numeric)");
        const int degree = std::stoi(key);
        p += LPoly::monomial(degree, jsondetail::need_rational(val, path + "." + key));
    }
    return p;
}

// ---- FormalClass: [{"syms": [...], "lpoly": {...}}, ...] ---------------

inline Json formal_to_json(const FormalClass& a) {
    Json j = Json::array();
    for (const auto& [mon, poly] : a.terms()) {
        Json term = Json::object();
        term["syms"] = mon.symbols();
        term["lpoly"] = lpoly_to_json(poly);
        j.push_back(std::move(term));
    }
    return j;
}

inline FormalClass formal_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array of terms");
    FormalClass a;
    int idx = 0;
    for (const auto& term : j) {
        const std::string tp = path + "[" + std::to_string(idx++) + "]";
        const Json& syms = jsondetail::need(term, "syms", tp);
        if (!syms.is_array()) throw ParseError(tp + ".syms: expected an array of strings");
        std::vector<std::string> names;
        for (const auto& s : syms) {
            if (!s.is_string() || s.get<std::string>().empty())
                throw ParseError(tp + ".syms: expected nonempty strings");
            names.push_back(s.get<std::string>());
        }
        const LPoly poly = lpoly_from_json(jsondetail::need(term, "lpoly", tp), tp + ".lpoly");
        FormalClass piece;
        if (names.empty()) piece = FormalClass(poly);
        else {
            piece = FormalClass(poly);
            for (const auto& name : names) piece *= FormalClass::symbol(name);
        }
        a += piece;
    }
    return a;
}

// ---- stratum tables: [{"components": [...], "class": ClassExpr}] -------

inline Json strata_to_json(const std::map<StratumKey, FormalClass>& table) {
    Json j = Json::array();
    for (const auto& [key, cls] : table) {
        Json entry = Json::object();
        entry["components"] = std::vector<ComponentId>(key.begin(), key.end());
        entry["class"] = formal_to_json(cls);
        j.push_back(std::move(entry));
    }
    return j;
}

inline std::map<StratumKey, FormalClass> strata_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array of stratum entries");
    std::map<StratumKey, FormalClass> table;
    int idx = 0;
    for (const auto& entry : j) {
        const std::string ep = path + "[" + std::to_string(idx++) + "]";
        const Json& comps = jsondetail::need(entry, "components", ep);
        if (!comps.is_array()) throw ParseError(ep + ".components: expected an array of ids");
        StratumKey key;
        for (const auto& c : comps) key.insert(jsondetail::need_int(c, ep + ".components"));
        FormalClass cls = formal_from_json(jsondetail::need(entry, "class", ep), ep + ".class");
        auto [it, inserted] = table.emplace(key, std::move(cls));
        if (!inserted) throw ParseError(ep + ": duplicate stratum key " + key_str(key));
    }
    return table;
}

// ---- SncModel ----------------------------------------------------------

inline Json model_to_json(const SncModel& model) {
    Json j = Json::object();
    j["fiber_dim"] = model.fiber_dim;
    Json comps = Json::array();
    for (const auto& [id, mult] : model.components)
        comps.push_back(Json{{"id", id}, {"multiplicity", mult}});
    j["components"] = std::move(comps);
    j["strata"] = strata_to_json(model.strata);
    return j;
}

inline SncModel model_from_json(const Json& j, const std::string& path = "model") {
    SncModel model;
    model.fiber_dim = jsondetail::need_int(jsondetail::need(j, "fiber_dim", path), path + ".fiber_dim");
    const Json& comps = jsondetail::need(j, "components", path);
    if (!comps.is_array()) throw ParseError(path + ".components: expected an array");
    int idx = 0;
    for (const auto& c : comps) {
        const std::string cp = path + ".components[" + std::to_string(idx++) + "]";
        const int id = jsondetail::need_int(jsondetail::need(c, "id", cp), cp + ".id");
        const int mult = jsondetail::need_int(jsondetail::need(c, "multiplicity", cp), cp + ".multiplicity");
        if (!model.components.emplace(id, mult).second)
            throw ParseError(cp + ": duplicate component id " + std::to_string(id));
    }
    model.strata = strata_from_json(jsondetail::need(j, "strata", path), path + ".strata");
    return model;
}

// ---- ConstructibleDatum -------------------------------------------------

inline Json datum_to_json(const ConstructibleDatum& datum) {
    Json j = Json::object();
    j["on_strata"] = strata_to_json(datum.on_strata);
    if (datum.on_center) j["on_center"] = strata_to_json(*datum.on_center);
    return j;
}

inline ConstructibleDatum datum_from_json(const Json& j, const std::string& path = "datum") {
    ConstructibleDatum d;
    d.on_strata = strata_from_json(jsondetail::need(j, "on_strata", path), path + ".on_strata");
    if (j.contains("on_center"))
        d.on_center = strata_from_json(j.at("on_center"), path + ".on_center");
    return d;
}

// ---- Center -------------------------------------------------------------

inline Json center_to_json(const Center& center) {
    Json j = Json::object();
    j["contains"] = std::vector<ComponentId>(center.contains.begin(), center.contains.end());
    j["codim"] = center.codim;
    j["traces"] = strata_to_json(center.traces);
    return j;
}

inline Center center_from_json(const Json& j, const std::string& path = "center") {
    Center c;
    const Json& contains = jsondetail::need(j, "contains", path);
    if (!contains.is_array()) throw ParseError(path + ".contains: expected an array of ids");
    for (const auto& id : contains) c.contains.insert(jsondetail::need_int(id, path + ".contains"));
    c.codim = jsondetail::need_int(jsondetail::need(j, "codim", path), path + ".codim");
    c.traces = strata_from_json(jsondetail::need(j, "traces", path), path + ".traces");
    return c;
}

// ---- TruncatedFormalClass report ----------------------------------------
// {"modulus_power": n, "terms": [{"syms": [...], "coeffs": ["c0",...]}]}

inline Json truncated_formal_to_json(const TruncatedFormalClass& value) {
    Json j = Json::object();
    j["modulus_power"] = value.modulus_power();
    Json terms = Json::array();
    for (const auto& [mon, coeff] : value.terms()) {
        Json term = Json::object();
        term["syms"] = mon.symbols();
        Json coeffs = Json::array();
        for (const auto& c : coeff.coeffs()) coeffs.push_back(format_rational(c));
        term["coeffs"] = std::move(coeffs);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline TruncatedFormalClass truncated_formal_from_json(const Json& j, const std::string& path = "value") {
    const int n = jsondetail::need_int(jsondetail::need(j, "modulus_power", path), path + ".modulus_power");
    if (n < 1) throw ParseError(path + ".modulus_power: must be >= 1");
    TruncatedFormalClass value(n);
    const Json& terms = jsondetail::need(j, "terms", path);
    if (!terms.is_array()) throw ParseError(path + ".terms: expected an array");
    int idx = 0;
    for (const auto& term : terms) {
        const std::string tp = path + ".terms[" + std::to_string(idx++) + "]";
        const Json& syms = jsondetail::need(term, "syms", tp);
        if (!syms.is_array()) throw ParseError(tp + ".syms: expected an array");
        std::vector<std::string> names;
        for (const auto& s : syms) {
            if (!s.is_string()) throw ParseError(tp + ".syms: expected strings");
            names.push_back(s.get<std::string>());
        }
        const Json& coeffs = jsondetail::need(term, "coeffs", tp);
        if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != n)
            throw ParseError(tp + ".coeffs: expected exactly " + std::to_string(n) + " rationals");
        std::vector<Rational> cs;
        for (const auto& c : coeffs) cs.push_back(jsondetail::need_rational(c, tp + ".coeffs"));
        value.add_term(Monomial(std::move(names)), TruncatedClass(n, std::move(cs)));
    }
    return value;
}

// ---- SymbolAssignment: {"name": "<rational>" | {"<deg>": "<rational>"}} --

inline SymbolAssignment assignment_from_json(const Json& j, const std::string& path = "assign") {
    if (!j.is_object()) throw ParseError(path + ": expected an object of symbol -> value");
    SymbolAssignment a;
    for (const auto& [name, val] : j.items()) {
        if (val.is_string())
            a.values[name] = LPoly(jsondetail::need_rational(val, path + "." + name));
        else
            a.values[name] = lpoly_from_json(val, path + "." + name);
    }
    return a;
}

// ---- files ----------------------------------------------------------------

inline Json load_json_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ParseError(filename + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(filename + ": " + e.what());
    }
}

inline void save_json_file(const std::string& filename, const Json& j) {
    std::ofstream out(filename);
    if (!out) throw DomainError(filename + ": cannot open file for writing");
    out << j.dump(2) << "\n";
}

} // namespace sncinv
