#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sncinv/errors.hpp"
#include "sncinv/formal.hpp"

namespace sncinv {

using ComponentId = int;

// Nonempty set of component ids indexing an open stratum.
using StratumKey = std::set<ComponentId>;

inline std::string key_str(const StratumKey& key) {
    std::string s = "{";
    for (ComponentId id : key) {
        if (s.size() > 1) s += ",";
        s += std::to_string(id);
    }
    return s + "}";
}

// Combinatorial snc degeneration model: component multiplicities and the
// classes of the open strata. An absent stratum key means an empty stratum
// (class 0); keys may also be present with an explicitly zero class.
struct SncModel {
    int fiber_dim = 0;                       // generic fiber dimension; total space is fiber_dim + 1
    std::map<ComponentId, int> components;   // id -> multiplicity >= 1
    std::map<StratumKey, FormalClass> strata;

    const FormalClass& stratum(const StratumKey& key) const {
        static const FormalClass zero;
        auto it = strata.find(key);
        return it == strata.end() ? zero : it->second;
    }

    bool operator==(const SncModel&) const = default;
};

// Structural invariant check; returns the violations (empty = valid).
inline std::vector<std::string> validate(const SncModel& model) {
    std::vector<std::string> bad;
    if (model.fiber_dim < 0) bad.push_back("fiber_dim must be >= 0");
    for (const auto& [id, mult] : model.components)
        if (mult < 1)
            bad.push_back("component " + std::to_string(id) + ": multiplicity must be >= 1");
    for (const auto& [key, cls] : model.strata) {
        if (key.empty()) {
            bad.push_back("stratum key must be nonempty");
            continue;
        }
        for (ComponentId id : key)
            if (!model.components.contains(id))
                bad.push_back("stratum " + key_str(key) + ": unknown component id " + std::to_string(id));
        if (static_cast<int>(key.size()) > model.fiber_dim + 1)
            bad.push_back("stratum " + key_str(key) + ": size exceeds fiber_dim + 1 (a codimension-" +
                          std::to_string(key.size()) + " stratum cannot fit)");
        if (!cls.is_zero() && key.size() > 1) {
            // Every component under a nonzero stratum must be exposed by its
            // own singleton entry, possibly with class 0.
            for (ComponentId id : key)
                if (!model.strata.contains(StratumKey{id}))
                    bad.push_back("stratum " + key_str(key) + ": singleton {" + std::to_string(id) +
                                  "} missing from strata");
        }
    }
    return bad;
}

inline bool is_valid(const SncModel& model) { return validate(model).empty(); }

// Class data of a constructible subset C of the special fiber:
// on_strata[H] = [C ∩ D_H°], and, when C is about to be transported through
// a blowup with center Z, on_center[H] = [C ∩ Z ∩ D_H°].
struct ConstructibleDatum {
    std::map<StratumKey, FormalClass> on_strata;
    std::optional<std::map<StratumKey, FormalClass>> on_center;

    const FormalClass& on_stratum(const StratumKey& key) const {
        static const FormalClass zero;
        auto it = on_strata.find(key);
        return it == on_strata.end() ? zero : it->second;
    }

    const FormalClass& on_center_at(const StratumKey& key) const {
        static const FormalClass zero;
        if (!on_center) return zero;
        auto it = on_center->find(key);
        return it == on_center->end() ? zero : it->second;
    }

    bool operator==(const ConstructibleDatum&) const = default;
};

inline std::vector<std::string> datum_violations(const SncModel& model, const ConstructibleDatum& datum) {
    std::vector<std::string> bad;
    for (const auto& [key, cls] : datum.on_strata)
        if (!model.strata.contains(key))
            bad.push_back("datum key " + key_str(key) + " is not a stratum of the model");
    return bad;
}

// The datum of C = whole special fiber: copies every stratum class.
inline ConstructibleDatum full_fiber_datum(const SncModel& model) {
    auto bad = validate(model);
    if (!bad.empty()) throw DomainError("full_fiber_datum: invalid model: " + bad.front());
    ConstructibleDatum d;
    d.on_strata = model.strata;
    return d;
}

// Classes of a disjoint union add stratum-wise.
inline ConstructibleDatum datum_disjoint_union(const ConstructibleDatum& a, const ConstructibleDatum& b) {
    ConstructibleDatum r = a;
    for (const auto& [key, cls] : b.on_strata) {
        auto [it, inserted] = r.on_strata.emplace(key, cls);
        if (!inserted) it->second += cls;
    }
    if (a.on_center || b.on_center) {
        std::map<StratumKey, FormalClass> merged = a.on_center.value_or(std::map<StratumKey, FormalClass>{});
        if (b.on_center)
            for (const auto& [key, cls] : *b.on_center) {
                auto [it, inserted] = merged.emplace(key, cls);
                if (!inserted) it->second += cls;
            }
        r.on_center = std::move(merged);
    }
    return r;
}

} // namespace sncinv
