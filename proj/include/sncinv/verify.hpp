#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sncinv/blowup.hpp"
#include "sncinv/errors.hpp"
#include "sncinv/invariant.hpp"
#include "sncinv/linear.hpp"
#include "sncinv/model.hpp"
#include "sncinv/rng.hpp"

namespace sncinv {

// Bounds for randomized instance generation. Instances are reproducible
// from (seed, params) alone; every random draw routes through one
// SplitMix64 stream.
struct GenParams {
    int max_components = 5;    // <= 8
    int max_multiplicity = 9;  // <= 30
    int max_codim = 5;         // <= 8
    int max_extra_strata = 3;  // extra random nerve keys beyond the flag chain
    int max_poly_degree = 4;   // <= 4

    bool operator==(const GenParams&) const = default;
};

inline void validate_params(const GenParams& p) {
    if (p.max_components < 1 || p.max_components > 8)
        throw DomainError("GenParams: max_components must be in 1..8");
    if (p.max_multiplicity < 1 || p.max_multiplicity > 30)
        throw DomainError("GenParams: max_multiplicity must be in 1..30");
    if (p.max_codim < 2 || p.max_codim > 8)
        throw DomainError("GenParams: max_codim must be in 2..8");
    if (p.max_extra_strata < 0 || p.max_extra_strata > 8)
        throw DomainError("GenParams: max_extra_strata must be in 0..8");
    if (p.max_poly_degree < 0 || p.max_poly_degree > 4)
        throw DomainError("GenParams: max_poly_degree must be in 0..4");
}

// A reproducible trial: a valid model, an admissible center, and a datum
// whose on_center table is consistent with the center's traces.
struct TestInstance {
    SncModel model;
    Center center;
    ConstructibleDatum datum;
    std::uint64_t seed = 0;
    GenParams params;
};

namespace gen {

struct SymbolCounter {
    int next = 0;
    std::string fresh(const char* prefix) { return std::string(prefix) + std::to_string(next++); }
};

inline LPoly random_poly(SplitMix64& rng, int max_degree) {
    LPoly p;
    const int terms = rng.range(1, 2);
    for (int t = 0; t < terms; ++t) {
        Rational c(rng.range(-4, 4), rng.range(1, 3));
        if (c == 0) c = 1;
        p += LPoly::monomial(rng.range(0, max_degree), c);
    }
    if (p.is_zero()) p = LPoly(1);
    return p;
}

inline FormalClass random_symbol_class(SplitMix64& rng, SymbolCounter& syms, const char* prefix,
                                       int max_degree) {
    FormalClass r = FormalClass::symbol(syms.fresh(prefix)) * random_poly(rng, max_degree);
    if (rng.percent(30)) r += FormalClass::symbol(syms.fresh(prefix)) * random_poly(rng, max_degree);
    return r;
}

// Model with all singleton strata, one nested flag chain of deeper strata,
// and a few extra random keys; every stratum class is a fresh symbol times
// a random polynomial. The datum covers most strata the same way.
inline std::pair<SncModel, ConstructibleDatum> model_and_datum(SplitMix64& rng, const GenParams& p,
                                                               SymbolCounter& syms) {
    SncModel model;
    const int k = rng.range(1, p.max_components);
    for (int i = 1; i <= k; ++i) model.components[i] = rng.range(1, p.max_multiplicity);

    const int depth = rng.range(1, k);
    model.fiber_dim = std::max(1, depth - 1) + rng.range(0, 3);

    std::vector<StratumKey> keys;
    for (int i = 1; i <= k; ++i) keys.push_back(StratumKey{i});
    std::vector<int> order = rng.sample(k, k);
    StratumKey chain;
    for (int t = 0; t < depth; ++t) {
        chain.insert(order[static_cast<std::size_t>(t)] + 1);
        if (chain.size() > 1) keys.push_back(chain);
    }
    const int extras = rng.range(0, p.max_extra_strata);
    for (int e = 0; e < extras; ++e) {
        const int sz = rng.range(1, std::min(k, model.fiber_dim + 1));
        std::vector<int> pick = rng.sample(k, sz);
        StratumKey key;
        for (int idx : pick) key.insert(idx + 1);
        keys.push_back(key);
    }

    for (const auto& key : keys)
        if (!model.strata.contains(key))
            model.strata.emplace(key, random_symbol_class(rng, syms, "D", p.max_poly_degree));

    ConstructibleDatum datum;
    for (const auto& [key, cls] : model.strata)
        if (rng.percent(85))
            datum.on_strata.emplace(key, random_symbol_class(rng, syms, "C", p.max_poly_degree));
    return {std::move(model), std::move(datum)};
}

// Admissible center for an arbitrary valid model: the containing set J_I is
// a subset of an existing stratum key, and traces split existing stratum
// classes by subtracting a fresh remainder symbol.
inline Center center_for(SplitMix64& rng, const SncModel& model, const GenParams& p,
                         SymbolCounter& syms) {
    std::vector<StratumKey> candidates;
    for (const auto& [key, cls] : model.strata)
        if (!cls.is_zero()) candidates.push_back(key);
    if (candidates.empty())
        for (const auto& [key, cls] : model.strata) candidates.push_back(key);
    if (candidates.empty()) throw DomainError("center_for: model has no strata");

    const StratumKey anchor = candidates[rng.below(candidates.size())];
    const int j = rng.range(1, static_cast<int>(anchor.size()));
    std::vector<int> anchor_ids(anchor.begin(), anchor.end());
    Center center;
    for (int pos : rng.sample(static_cast<int>(anchor_ids.size()), j))
        center.contains.insert(anchor_ids[static_cast<std::size_t>(pos)]);

    const int m = model.fiber_dim;
    const int lo = std::max(2, j);
    int hi = std::min(p.max_codim, m + 1);
    // keep the anchor stratum shallow enough to carry a trace when possible
    hi = std::min(hi, m + 1 + j - static_cast<int>(anchor.size()));
    if (hi < lo) hi = lo;
    center.codim = rng.range(lo, std::min(hi, m + 1));

    for (const auto& [key, cls] : model.strata) {
        if (!std::includes(key.begin(), key.end(), center.contains.begin(), center.contains.end()))
            continue;
        if (static_cast<int>(key.size()) - j > m + 1 - center.codim) continue;
        if (key != anchor && !rng.percent(90)) continue;
        center.traces[key] = cls - FormalClass::symbol(syms.fresh("R"));
    }
    return center;
}

// [C ∩ Z ∩ D_H°] = [C ∩ D_H°] minus a fresh remainder, on the strata where
// both the center and the datum live.
inline std::map<StratumKey, FormalClass> on_center_for(SplitMix64& rng,
                                                       const ConstructibleDatum& datum,
                                                       const Center& center, SymbolCounter& syms) {
    std::map<StratumKey, FormalClass> onc;
    for (const auto& [key, cls] : center.traces) {
        auto it = datum.on_strata.find(key);
        if (it == datum.on_strata.end() || it->second.is_zero()) continue;
        if (!rng.percent(90)) continue;
        onc[key] = it->second - FormalClass::symbol(syms.fresh("CR"));
    }
    return onc;
}

} // namespace gen

inline TestInstance random_instance(std::uint64_t seed, const GenParams& params = {}) {
    validate_params(params);
    for (int attempt = 0; attempt < 8; ++attempt) {
        SplitMix64 rng(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt));
        gen::SymbolCounter syms;
        auto [model, datum] = gen::model_and_datum(rng, params, syms);
        Center center = gen::center_for(rng, model, params, syms);
        datum.on_center = gen::on_center_for(rng, datum, center, syms);
        if (!validate(model).empty()) continue;
        if (!center_violations(model, center).empty()) continue;
        return TestInstance{std::move(model), std::move(center), std::move(datum), seed, params};
    }
    throw DomainError("random_instance: generation failed for seed " + std::to_string(seed));
}

// Verdict of one blowup move: the refined invariant of (model, C) against
// the refined invariant of the blown-up model with the transported datum.
struct InvarianceReport {
    TruncatedFormalClass lhs{2};
    TruncatedFormalClass rhs{2};
    bool equal = false;
    int modulus_power = 2;
    MoveLog move_log;
};

inline InvarianceReport check_invariance(const TestInstance& instance, int n = 2) {
    InvarianceReport report{TruncatedFormalClass(n), TruncatedFormalClass(n), false, n, {}};
    report.lhs = serre_tilde(instance.model, instance.datum, n);
    BlowupResult res = blow_up(instance.model, instance.center, instance.datum);
    report.rhs = serre_tilde(res.new_model, *res.transported, n);
    report.equal = report.lhs == report.rhs;
    report.move_log = res.log;
    return report;
}

// ---- blowup chains --------------------------------------------------------

struct ChainMove {
    Center center;
    std::map<StratumKey, FormalClass> datum_on_center;
};

struct Chain {
    SncModel model;
    ConstructibleDatum datum;
    std::vector<ChainMove> moves;
    std::uint64_t seed = 0;
    GenParams params;
};

// After every move all component ids shift up by one, keeping id 0 free for
// the next exceptional divisor. Classes are untouched, so invariants are
// unchanged by the relabeling.
inline SncModel relabel_up(const SncModel& model) {
    SncModel out;
    out.fiber_dim = model.fiber_dim;
    for (const auto& [id, mult] : model.components) out.components[id + 1] = mult;
    for (const auto& [key, cls] : model.strata) {
        StratumKey shifted;
        for (ComponentId id : key) shifted.insert(id + 1);
        out.strata.emplace(std::move(shifted), cls);
    }
    return out;
}

inline ConstructibleDatum relabel_up(const ConstructibleDatum& datum) {
    ConstructibleDatum out;
    for (const auto& [key, cls] : datum.on_strata) {
        StratumKey shifted;
        for (ComponentId id : key) shifted.insert(id + 1);
        out.on_strata.emplace(std::move(shifted), cls);
    }
    return out;
}

inline std::vector<InvarianceReport> chain_blowups(SncModel model, ConstructibleDatum datum,
                                                   const std::vector<ChainMove>& moves, int n = 2) {
    std::vector<InvarianceReport> reports;
    for (std::size_t step = 0; step < moves.size(); ++step) {
        datum.on_center = moves[step].datum_on_center;
        InvarianceReport report{TruncatedFormalClass(n), TruncatedFormalClass(n), false, n, {}};
        try {
            report.lhs = serre_tilde(model, datum, n);
            BlowupResult res = blow_up(model, moves[step].center, datum);
            report.rhs = serre_tilde(res.new_model, *res.transported, n);
            report.equal = report.lhs == report.rhs;
            report.move_log = res.log;
            model = relabel_up(res.new_model);
            datum = relabel_up(*res.transported);
        } catch (const DomainError& e) {
            throw DomainError("chain step " + std::to_string(step) + ": " + e.what());
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

// A reproducible chain: moves are generated against the evolving models,
// with each step's traces and on_center data split off the current classes
// by fresh remainder symbols.
inline Chain random_chain(std::uint64_t seed, int length, const GenParams& params = {}) {
    validate_params(params);
    SplitMix64 rng(seed);
    gen::SymbolCounter syms;
    auto [model, datum] = gen::model_and_datum(rng, params, syms);
    Chain chain;
    chain.model = model;
    chain.datum = datum;
    chain.seed = seed;
    chain.params = params;

    SncModel cur = std::move(model);
    ConstructibleDatum curd = std::move(datum);
    for (int step = 0; step < length; ++step) {
        ChainMove move;
        move.center = gen::center_for(rng, cur, params, syms);
        move.datum_on_center = gen::on_center_for(rng, curd, move.center, syms);
        curd.on_center = move.datum_on_center;
        BlowupResult res = blow_up(cur, move.center, curd);
        cur = relabel_up(res.new_model);
        curd = relabel_up(*res.transported);
        chain.moves.push_back(std::move(move));
    }
    return chain;
}

// ---- coefficient systems ---------------------------------------------------

// An exact linear system over Q in named unknowns, with the equation labels
// tracking the move or instance that produced each relation.
struct CoefficientSystem {
    std::vector<std::string> unknowns;
    std::vector<AffineEquation> equations;
    SolveStatus status = SolveStatus::Unique;
    std::map<std::string, Rational> determined;  // unknowns forced to a unique value
    int free_count = 0;
    std::vector<std::string> certificate;  // deletion-minimal infeasible label set
};

namespace detail {

inline void finish_system(CoefficientSystem& sys) {
    AffineSolution sol = solve_affine(static_cast<int>(sys.unknowns.size()), sys.equations);
    sys.status = sol.status;
    sys.free_count = sol.free_count;
    if (sol.status == SolveStatus::Inconsistent) {
        // deletion-minimal infeasible subset of equation labels
        std::vector<std::string> labels;
        for (const auto& eq : sys.equations)
            if (std::find(labels.begin(), labels.end(), eq.label) == labels.end())
                labels.push_back(eq.label);
        std::vector<std::string> keep = labels;
        auto solve_subset = [&](const std::vector<std::string>& subset) {
            std::vector<AffineEquation> eqs;
            for (const auto& eq : sys.equations)
                if (std::find(subset.begin(), subset.end(), eq.label) != subset.end())
                    eqs.push_back(eq);
            return solve_affine(static_cast<int>(sys.unknowns.size()), eqs).status;
        };
        for (const auto& label : labels) {
            std::vector<std::string> without;
            for (const auto& l : keep)
                if (l != label) without.push_back(l);
            if (without.size() < keep.size() &&
                solve_subset(without) == SolveStatus::Inconsistent)
                keep = std::move(without);
        }
        sys.certificate = std::move(keep);
        return;
    }
    for (std::size_t i = 0; i < sys.unknowns.size(); ++i)
        if (sol.value[i]) sys.determined[sys.unknowns[i]] = *sol.value[i];
}

} // namespace detail

// Unknowns c(a,b) for the pair coefficients of the refined invariant, one
// per coprime pair a <= b <= bound. The relations come from the two move
// families on two-component local models:
//   - blowing up inside a multiplicity-one component forces c(1,1) = 1;
//   - blowing up Z inside D_1 ∩ D_2 splits c(a,b) into c(a+b,a) + c(a+b,b).
inline CoefficientSystem solve_pair_coefficients(int bound) {
    if (bound < 1) throw DomainError("solve_pair_coefficients: bound must be >= 1");
    CoefficientSystem sys;
    std::map<std::pair<int, int>, int> index;
    auto unknown = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        auto [it, inserted] = index.emplace(std::make_pair(a, b), static_cast<int>(sys.unknowns.size()));
        if (inserted)
            sys.unknowns.push_back("c(" + std::to_string(a) + "," + std::to_string(b) + ")");
        return it->second;
    };
    for (int b = 1; b <= bound; ++b)
        for (int a = 1; a <= b; ++a)
            if (std::gcd(a, b) == 1) unknown(a, b);

    {
        AffineEquation eq;
        eq.coeff[unknown(1, 1)] = 1;
        eq.rhs = 1;
        eq.label = "normalize(1,1)";
        sys.equations.push_back(std::move(eq));
    }
    for (int b = 1; b <= bound; ++b)
        for (int a = 1; a <= b; ++a) {
            if (std::gcd(a, b) != 1 || a + b > bound) continue;
            AffineEquation eq;
            eq.coeff[unknown(a, b)] += 1;
            eq.coeff[unknown(a + b, a)] -= 1;
            eq.coeff[unknown(a + b, b)] -= 1;
            eq.rhs = 0;
            eq.label = "split(" + std::to_string(a) + "," + std::to_string(b) + ")";
            sys.equations.push_back(std::move(eq));
        }
    detail::finish_system(sys);
    return sys;
}

// ---- deterministic local families ------------------------------------------

// A local model with components 1..d' of the given multiplicities, a center
// contained in the components j_ids, and a constructible set concentrated on
// the deepest stratum and contained in the center.
inline TestInstance local_instance(const std::vector<int>& mults, const StratumKey& j_ids, int codim) {
    const int d = static_cast<int>(mults.size());
    if (d < 1) throw DomainError("local_instance: need at least one component");
    TestInstance inst;
    inst.model.fiber_dim = codim + d;
    StratumKey all;
    for (int i = 1; i <= d; ++i) {
        inst.model.components[i] = mults[static_cast<std::size_t>(i - 1)];
        all.insert(i);
    }
    int counter = 0;
    for (unsigned long mask = 1; mask < (1ul << d); ++mask) {
        StratumKey key;
        for (int b = 0; b < d; ++b)
            if (mask & (1ul << b)) key.insert(b + 1);
        inst.model.strata.emplace(std::move(key), FormalClass::symbol("D" + std::to_string(counter++)));
    }

    inst.center.contains = j_ids;
    inst.center.codim = codim;
    const FormalClass c_class = FormalClass::symbol("C");
    inst.center.traces[all] = c_class + FormalClass::symbol("ZR");
    if (j_ids != all) inst.center.traces[j_ids] = FormalClass::symbol("Z0");

    inst.datum.on_strata[all] = c_class;
    inst.datum.on_center = std::map<StratumKey, FormalClass>{{all, c_class}};
    return inst;
}

// Bounds for the deterministic local families driving the coefficient
// solvers and the depth probes.
struct RefineFamily {
    int min_depth = 1;
    int max_depth = 3;         // number of components d' (strata keys stay <= 4)
    int multiplicity_bound = 2;
    int max_codim = 4;

    bool operator==(const RefineFamily&) const = default;
};

inline std::vector<std::pair<std::string, TestInstance>> build_local_family(const RefineFamily& family) {
    if (family.max_depth > 4 || family.multiplicity_bound < 1)
        throw DomainError("build_local_family: depth must stay <= 4 and multiplicities >= 1");
    std::vector<std::pair<std::string, TestInstance>> out;
    for (int d = family.min_depth; d <= family.max_depth; ++d) {
        std::vector<int> mults(static_cast<std::size_t>(d), 1);
        for (;;) {
            // all subsets of {1..d} as the containing set
            for (unsigned long mask = 1; mask < (1ul << d); ++mask) {
                StratumKey j_ids;
                for (int b = 0; b < d; ++b)
                    if (mask & (1ul << b)) j_ids.insert(b + 1);
                const int lo = std::max(2, static_cast<int>(j_ids.size()));
                for (int c = lo; c <= std::max(lo, family.max_codim); ++c) {
                    std::string label = "d" + std::to_string(d) + ":a=(";
                    for (int i = 0; i < d; ++i)
                        label += (i ? "," : "") + std::to_string(mults[static_cast<std::size_t>(i)]);
                    label += "):J=" + key_str(j_ids) + ":c=" + std::to_string(c);
                    out.emplace_back(label, local_instance(mults, j_ids, c));
                }
            }
            // next nondecreasing multiplicity tuple
            int pos = d - 1;
            while (pos >= 0 && mults[static_cast<std::size_t>(pos)] == family.multiplicity_bound) --pos;
            if (pos < 0) break;
            const int v = mults[static_cast<std::size_t>(pos)] + 1;
            for (int i = pos; i < d; ++i) mults[static_cast<std::size_t>(i)] = v;
        }
    }
    return out;
}

// Plain invariance run over a local family at a chosen modulus power;
// failures are reported, never judged.
struct ProbeOutcome {
    int modulus_power = 3;
    int trials = 0;
    int failures = 0;
    std::vector<std::string> failed_labels;
};

inline ProbeOutcome probe_family(const RefineFamily& family, int n = 3) {
    ProbeOutcome out;
    out.modulus_power = n;
    for (const auto& [label, inst] : build_local_family(family)) {
        ++out.trials;
        if (!check_invariance(inst, n).equal) {
            ++out.failures;
            out.failed_labels.push_back(label);
        }
    }
    return out;
}

// Search for a refinement one power deeper: keep the multiplicity-one and
// pair terms fixed, add unknown coefficients c(x,y,z) on the size-3 strata
// of the datum (terms [C ∩ D_H°](1-L)^2, keyed by the sorted multiplicity
// triple), and require invariance across every move of the family at
// truncation n. Returns the system with a solution family or a
// deletion-minimal infeasible subset of instance labels.
inline CoefficientSystem refine_search(int n = 3, const RefineFamily& family = {}) {
    CoefficientSystem sys;
    std::map<std::vector<int>, int> index;
    auto unknown = [&](std::vector<int> triple) {
        std::sort(triple.begin(), triple.end());
        auto [it, inserted] = index.emplace(triple, static_cast<int>(sys.unknowns.size()));
        if (inserted) {
            std::string name = "c(";
            for (std::size_t i = 0; i < triple.size(); ++i)
                name += (i ? "," : "") + std::to_string(triple[i]);
            sys.unknowns.push_back(name + ")");
        }
        return it->second;
    };

    struct LinForm {
        TruncatedFormalClass constant;
        std::map<int, TruncatedFormalClass> coeff;
    };
    const auto with_extras = [&](const SncModel& model, const ConstructibleDatum& datum) {
        LinForm form{serre_tilde(model, datum, n), {}};
        const TruncatedClass square = truncate((LPoly(1) - LPoly::var()).pow(2), n);
        for (const auto& [key, cls] : datum.on_strata) {
            if (key.size() != 3 || cls.is_zero()) continue;
            std::vector<int> triple;
            for (ComponentId id : key) triple.push_back(model.components.at(id));
            const int idx = unknown(std::move(triple));
            auto [it, inserted] = form.coeff.emplace(idx, TruncatedFormalClass(n));
            it->second += formal_truncate(cls, n) * square;
        }
        return form;
    };

    for (const auto& [label, inst] : build_local_family(family)) {
        LinForm lhs = with_extras(inst.model, inst.datum);
        BlowupResult res = blow_up(inst.model, inst.center, inst.datum);
        LinForm rhs = with_extras(res.new_model, *res.transported);

        // lhs - rhs = 0, scattered over (symbol monomial, basis index)
        std::map<std::pair<Monomial, int>, AffineEquation> rows;
        auto scatter = [&](const TruncatedFormalClass& value, int unknown_idx, const Rational& sign) {
            for (const auto& [mon, coeffs] : value.terms())
                for (int k = 0; k < n; ++k) {
                    const Rational& c = coeffs.coeffs()[static_cast<std::size_t>(k)];
                    if (c == 0) continue;
                    AffineEquation& eq = rows[{mon, k}];
                    if (unknown_idx < 0) eq.rhs -= sign * c;  // constants move to the rhs
                    else eq.coeff[unknown_idx] += sign * c;
                }
        };
        scatter(lhs.constant, -1, 1);
        scatter(rhs.constant, -1, -1);
        for (const auto& [idx, value] : lhs.coeff) scatter(value, idx, 1);
        for (const auto& [idx, value] : rhs.coeff) scatter(value, idx, -1);

        for (auto& [key, eq] : rows) {
            bool trivial = eq.rhs == 0;
            for (const auto& [i, c] : eq.coeff)
                if (c != 0) trivial = false;
            if (trivial) continue;
            eq.label = label;
            sys.equations.push_back(std::move(eq));
        }
    }
    detail::finish_system(sys);
    return sys;
}

// ---- seeded trial driver -----------------------------------------------------

// One randomized trial as recorded in verification reports: equality of the
// plain invariant mod L-1 and of the refined invariant at the requested
// power, across a single blowup.
struct TrialResult {
    std::uint64_t seed = 0;
    GenParams params;
    bool equal_n1 = false;
    bool equal_n = false;
    int modulus_power = 2;
    long long a0 = 0;
    TruncatedFormalClass lhs{2};
    TruncatedFormalClass rhs{2};
};

inline TrialResult run_trial(std::uint64_t seed, const GenParams& params, int n = 2) {
    const TestInstance inst = random_instance(seed, params);
    TrialResult trial{seed, params, false, false, n, 0, TruncatedFormalClass(n), TruncatedFormalClass(n)};
    BlowupResult res = blow_up(inst.model, inst.center, inst.datum);
    trial.a0 = res.log.a0;
    trial.equal_n1 = serre(inst.model, inst.datum) == serre(res.new_model, *res.transported);
    trial.lhs = serre_tilde(inst.model, inst.datum, n);
    trial.rhs = serre_tilde(res.new_model, *res.transported, n);
    trial.equal_n = trial.lhs == trial.rhs;
    return trial;
}

} // namespace sncinv
