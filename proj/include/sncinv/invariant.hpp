#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sncinv/errors.hpp"
#include "sncinv/model.hpp"

namespace sncinv {

// Motivic Serre invariant of (model, C): the sum of [C ∩ D_i°] over the
// multiplicity-one components, modulo L-1.
inline TruncatedFormalClass serre(const SncModel& model, const ConstructibleDatum& datum) {
    auto bad = datum_violations(model, datum);
    if (!bad.empty()) throw DomainError("serre: " + bad.front());
    TruncatedFormalClass acc(1);
    for (const auto& [id, mult] : model.components) {
        if (mult != 1) continue;
        const FormalClass& cls = datum.on_stratum(StratumKey{id});
        for (const auto& [mon, poly] : cls.terms()) acc.add_term(mon, truncate(poly, 1));
    }
    return acc;
}

// Refined invariant modulo (L-1)^n:
//   sum over multiplicity-one components of [C ∩ D_i°]
// + sum over pairs {i,j} with coprime multiplicities of
//   (1/(a_i a_j)) [C ∩ D_ij°] (1-L).
// The default n = 2 is where the blowup invariance holds; other powers
// evaluate the same expression.
inline TruncatedFormalClass serre_tilde(const SncModel& model, const ConstructibleDatum& datum, int n = 2) {
    if (n < 1) throw DomainError("serre_tilde: modulus power must be >= 1");
    auto bad = datum_violations(model, datum);
    if (!bad.empty()) throw DomainError("serre_tilde: " + bad.front());

    TruncatedFormalClass acc(n);
    for (const auto& [id, mult] : model.components) {
        if (mult != 1) continue;
        acc += formal_truncate(datum.on_stratum(StratumKey{id}), n);
    }
    const TruncatedClass one_minus_L = truncate(LPoly(1) - LPoly::var(), n);
    for (auto it = model.components.begin(); it != model.components.end(); ++it)
        for (auto jt = std::next(it); jt != model.components.end(); ++jt) {
            const long long ai = it->second, aj = jt->second;
            if (std::gcd(ai, aj) != 1) continue;
            const FormalClass& cls = datum.on_stratum(StratumKey{it->first, jt->first});
            if (cls.is_zero()) continue;
            acc += formal_truncate(cls, n) * one_minus_L * Rational(1, ai * aj);
        }
    return acc;
}

// Evaluation target for base symbols; must cover every symbol that occurs.
struct SymbolAssignment {
    std::map<std::string, LPoly> values;

    static SymbolAssignment all_to(const Rational& c) {
        SymbolAssignment a;
        a.default_value = LPoly(c);
        return a;
    }

    std::optional<LPoly> default_value;  // fallback for symbols not listed

    const LPoly& lookup(const std::string& name) const {
        auto it = values.find(name);
        if (it != values.end()) return it->second;
        if (default_value) return *default_value;
        throw DomainError("symbol '" + name + "' has no assigned value");
    }
};

// Substitute symbols by their assigned L-polynomials; the result is a plain
// element of Q[L]/(L-1)^n.
inline TruncatedClass substitute(const TruncatedFormalClass& value, const SymbolAssignment& assign) {
    const int n = value.modulus_power();
    TruncatedClass acc(n);
    for (const auto& [mon, coeff] : value.terms()) {
        LPoly prod(1);
        for (const auto& name : mon.symbols()) prod *= assign.lookup(name);
        acc += truncate(prod, n) * coeff;
    }
    return acc;
}

// Coefficients of the substituted value in the (L-1)-power basis.
inline std::vector<Rational> euler_part(const TruncatedFormalClass& value, const SymbolAssignment& assign) {
    return substitute(value, assign).coeffs();
}

struct ResidueReport {
    int modulus_power = 1;
    long long q = 2;
    Rational exact_value;           // substituted value evaluated at L = q
    std::optional<BigInt> residue;  // residue mod q-1 of the mod-(L-1) part, in [0, q-2]
    std::string residue_error;      // why the residue is missing (n >= 2 only)
    bool canonical = false;         // true iff modulus_power == 1
};

// Specialize to a residue field of size q. At modulus power 1 this recovers
// the classical Serre invariant in Z/(q-1); at higher powers no canonical
// residue ring exists, so only the exact rational evaluation is reported
// (plus the residue of the mod-(L-1) reduction, when its denominators are
// invertible).
inline ResidueReport specialize(const TruncatedFormalClass& value, const SymbolAssignment& assign, long long q) {
    if (q < 2) throw DomainError("specialize: q must be >= 2");
    const int n = value.modulus_power();
    const TruncatedClass sub = substitute(value, assign);

    ResidueReport report;
    report.modulus_power = n;
    report.q = q;
    report.canonical = (n == 1);

    Rational exact = 0;
    Rational power = 1;
    for (const auto& c : sub.coeffs()) {
        exact += c * power;
        power *= Rational(q - 1);
    }
    report.exact_value = exact;

    const Rational& c0 = sub.coeffs().front();
    const BigInt modulus = q - 1;
    auto inv = mod_inverse(denominator(c0), modulus);
    if (!inv) {
        const std::string msg = "denominator " + format_rational(Rational(denominator(c0))) +
                                " of coefficient " + format_rational(c0) + " not invertible mod " +
                                format_rational(Rational(modulus));
        if (n == 1) throw DomainError("specialize: " + msg);
        report.residue_error = msg;
        return report;
    }
    if (modulus == 1) {
        report.residue = BigInt(0);
    } else {
        BigInt r = (numerator(c0) % modulus) * (*inv) % modulus;
        report.residue = (r % modulus + modulus) % modulus;
    }
    return report;
}

} // namespace sncinv
