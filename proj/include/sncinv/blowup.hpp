#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sncinv/errors.hpp"
#include "sncinv/model.hpp"

namespace sncinv {

// Id reserved for the exceptional component of a blowup.
inline constexpr ComponentId kExceptionalId = 0;

// Blowup center with normal crossings with the special fiber. `contains`
// lists the components whose divisor contains Z; `codim` is the codimension
// of Z in the total space; `traces` records [Z ∩ D_H°] for the strata Z
// meets (absent key = Z misses the stratum).
struct Center {
    StratumKey contains;  // nonempty
    int codim = 2;
    std::map<StratumKey, FormalClass> traces;  // keys contain `contains`

    const FormalClass& trace(const StratumKey& key) const {
        static const FormalClass zero;
        auto it = traces.find(key);
        return it == traces.end() ? zero : it->second;
    }

    bool operator==(const Center&) const = default;
};

struct MoveLog {
    StratumKey contains;
    int codim = 0;
    long long a0 = 0;

    bool operator==(const MoveLog&) const = default;
};

struct BlowupResult {
    SncModel new_model;
    std::optional<ConstructibleDatum> transported;
    MoveLog log;
};

// Admissibility of a center for a model; returns violations (empty = admissible).
inline std::vector<std::string> center_violations(const SncModel& model, const Center& center) {
    std::vector<std::string> bad;
    if (center.contains.empty()) bad.push_back("center must lie in at least one component");
    for (ComponentId id : center.contains)
        if (!model.components.contains(id))
            bad.push_back("center names unknown component id " + std::to_string(id));
    if (model.components.contains(kExceptionalId))
        bad.push_back("component id 0 is reserved for the exceptional divisor");
    if (center.codim < 2) bad.push_back("codim >= 2 required (codimension-1 blowups are isomorphisms)");
    if (center.codim < static_cast<int>(center.contains.size()))
        bad.push_back("codim must be at least the number of containing components");
    if (center.codim > model.fiber_dim + 1)
        bad.push_back("codim exceeds the total-space dimension fiber_dim + 1");
    for (const auto& [key, cls] : center.traces) {
        if (!std::includes(key.begin(), key.end(), center.contains.begin(), center.contains.end()))
            bad.push_back("trace key " + key_str(key) + " does not contain the center's components");
        if (!model.strata.contains(key))
            bad.push_back("trace key " + key_str(key) + " is not a stratum of the model");
        // Z can only meet strata deep enough to hold a codim-c subvariety.
        if (static_cast<int>(key.size()) - static_cast<int>(center.contains.size()) >
            model.fiber_dim + 1 - center.codim)
            bad.push_back("trace key " + key_str(key) + " is too deep for a codimension-" +
                          std::to_string(center.codim) + " center");
    }
    return bad;
}

inline void require_admissible(const SncModel& model, const Center& center) {
    auto bad = center_violations(model, center);
    if (!bad.empty()) throw DomainError("inadmissible center: " + bad.front());
}

// Multiplicity of the exceptional divisor: the sum of the multiplicities of
// the components containing the center.
inline long long exceptional_multiplicity(const SncModel& model, const Center& center) {
    require_admissible(model, center);
    long long a0 = 0;
    for (ComponentId id : center.contains) a0 += model.components.at(id);
    return a0;
}

// Class of the fiber of the new open stratum E_{Hp}° over a point of
// Z ∩ D_H°. The fiber of the blowup over such a point is projective
// (c-1)-space with homogeneous coordinates indexed by the c local equations
// of Z; the strict transform of D_i, i in J_I, meets it in the coordinate
// hyperplane y_i = 0, while for i in H \ J_I the whole fiber lies inside
// E_i. Hence the locus with stratum key exactly Hp is nonzero only when
// H = J_I ∪ (Hp \ {0}) and is cut out by
//     y_i = 0  for i in Z0 = Hp ∩ J_I,   y_i != 0  for i in J_I \ Hp,
// whose class is L^{c-|Z0|-s} (L-1)^{s-1} when s = |J_I \ Hp| >= 1, and the
// class of projective (c-1-|Z0|)-space when s = 0.
inline LPoly fiber_stratum_class(const StratumKey& H, const StratumKey& Hp, const Center& center) {
    const StratumKey& J = center.contains;
    if (!std::includes(H.begin(), H.end(), J.begin(), J.end()))
        throw DomainError("fiber_stratum_class: stratum " + key_str(H) + " does not contain the center");
    if (H.contains(kExceptionalId))
        throw DomainError("fiber_stratum_class: old stratum key may not contain 0");
    if (!Hp.contains(kExceptionalId))
        throw DomainError("fiber_stratum_class: new stratum key must contain 0");
    if (center.codim < static_cast<int>(J.size()))
        throw DomainError("fiber_stratum_class: codim smaller than number of containing components");

    // Support rule: Hp \ {0} inside H and H \ J_I inside Hp.
    for (ComponentId id : Hp)
        if (id != kExceptionalId && !H.contains(id)) return LPoly();
    int z0 = 0;  // |Hp ∩ J_I|
    for (ComponentId id : J)
        if (Hp.contains(id)) ++z0;
    for (ComponentId id : H)
        if (!J.contains(id) && !Hp.contains(id)) return LPoly();

    const int c = center.codim;
    const int s = static_cast<int>(J.size()) - z0;
    if (s == 0) return projective_class(c - 1 - z0);
    return LPoly::power_of_L(c - z0 - s) * (LPoly::var() - LPoly(1)).pow(s - 1);
}

namespace detail {

inline void add_class(std::map<StratumKey, FormalClass>& table, const StratumKey& key, const FormalClass& val) {
    if (val.is_zero()) return;
    auto [it, inserted] = table.emplace(key, val);
    if (!inserted) it->second += val;
}

inline void ensure_key(std::map<StratumKey, FormalClass>& table, const StratumKey& key) {
    table.try_emplace(key, FormalClass());
}

} // namespace detail

// Blow up an admissible center. Component 0 is the exceptional divisor with
// multiplicity a0; the strata of the result are
//   (a) keys without 0: old class minus the trace (trace counts only for
//       keys containing all of J_I),
//   (b) keys Hp with 0: trace of H = J_I ∪ (Hp \ {0}) times the fiber class.
// A datum, when supplied, is transported by the same two rules applied to
// its on_strata / on_center tables; this requires on_center to be present.
inline BlowupResult blow_up(const SncModel& model, const Center& center,
                            const std::optional<ConstructibleDatum>& datum = std::nullopt) {
    require_admissible(model, center);
    if (datum) {
        auto bad = datum_violations(model, *datum);
        if (!bad.empty()) throw DomainError("blow_up: " + bad.front());
        if (!datum->on_center)
            throw DomainError("blow_up: transport requested but datum has no on_center table");
        for (const auto& [key, cls] : *datum->on_center) {
            if (!std::includes(key.begin(), key.end(), center.contains.begin(), center.contains.end()))
                throw DomainError("blow_up: on_center key " + key_str(key) + " does not contain the center");
            if (!center.traces.contains(key))
                throw DomainError("blow_up: on_center key " + key_str(key) + " is not a trace key of the center");
        }
    }

    const StratumKey& J = center.contains;
    long long a0 = 0;
    for (ComponentId id : J) a0 += model.components.at(id);

    BlowupResult result;
    result.log = MoveLog{J, center.codim, a0};
    SncModel& out = result.new_model;
    out.fiber_dim = model.fiber_dim;
    out.components = model.components;
    out.components[kExceptionalId] = static_cast<int>(a0);

    // (a) strict transforms: every old key stays present.
    for (const auto& [key, cls] : model.strata) {
        FormalClass val = cls;
        if (std::includes(key.begin(), key.end(), J.begin(), J.end())) val -= center.trace(key);
        out.strata[key] = std::move(val);
    }

    ConstructibleDatum transported;
    if (datum) {
        for (const auto& [key, cls] : datum->on_strata) {
            FormalClass val = cls;
            if (std::includes(key.begin(), key.end(), J.begin(), J.end())) val -= datum->on_center_at(key);
            transported.on_strata[key] = std::move(val);
        }
        // on_center entries over strata the datum records as empty still
        // subtract; absent on_strata keys count as zero
        for (const auto& [key, cls] : *datum->on_center)
            if (!datum->on_strata.contains(key)) transported.on_strata[key] = -cls;
    }

    // (b) exceptional strata, one source stratum per new key.
    const std::vector<ComponentId> j_ids(J.begin(), J.end());
    detail::ensure_key(out.strata, StratumKey{kExceptionalId});
    for (const auto& [H, trace_class] : center.traces) {
        const FormalClass* datum_class = nullptr;
        if (datum && datum->on_center) {
            auto it = datum->on_center->find(H);
            if (it != datum->on_center->end()) datum_class = &it->second;
        }
        if (trace_class.is_zero() && (datum_class == nullptr || datum_class->is_zero())) continue;

        StratumKey base{kExceptionalId};
        for (ComponentId id : H)
            if (!J.contains(id)) base.insert(id);

        for (unsigned long mask = 0; mask < (1ul << j_ids.size()); ++mask) {
            StratumKey Hp = base;
            for (std::size_t b = 0; b < j_ids.size(); ++b)
                if (mask & (1ul << b)) Hp.insert(j_ids[b]);
            const LPoly fiber = fiber_stratum_class(H, Hp, center);
            if (fiber.is_zero()) continue;
            detail::add_class(out.strata, Hp, trace_class * fiber);
            if (datum_class != nullptr && !datum_class->is_zero()) {
                detail::add_class(transported.on_strata, Hp, *datum_class * fiber);
                detail::ensure_key(out.strata, Hp);
            }
        }
    }

    // Expose singletons under every nonzero stratum.
    std::vector<StratumKey> singletons;
    for (const auto& [key, cls] : out.strata)
        if (!cls.is_zero())
            for (ComponentId id : key) singletons.push_back(StratumKey{id});
    for (const auto& s : singletons) detail::ensure_key(out.strata, s);

    if (datum) result.transported = std::move(transported);
    return result;
}

} // namespace sncinv
