#pragma once

// Shared test helpers: deterministic random ring elements for property
// tests, plus the independent oracles used to cross-check the library
// (definition-sum expansion without truncated arithmetic, inclusion-
// exclusion over coordinate loci, binomial expansion).

#include <vector>

#include "sncinv/invariant.hpp"
#include "sncinv/model.hpp"
#include "sncinv/rng.hpp"

namespace testsupport {

using namespace sncinv;

inline Rational random_rational(SplitMix64& rng) {
    const int num = rng.range(-9, 9);
    const int den = rng.range(1, 6);
    return Rational(num, den);
}

inline LPoly random_lpoly(SplitMix64& rng, int max_degree = 4) {
    LPoly p;
    const int terms = rng.range(0, 3);
    for (int t = 0; t < terms; ++t)
        p += LPoly::monomial(rng.range(0, max_degree), random_rational(rng));
    return p;
}

inline LPoly random_nonzero_lpoly(SplitMix64& rng, int max_degree = 4) {
    for (;;) {
        LPoly p = random_lpoly(rng, max_degree);
        if (!p.is_zero()) return p;
    }
}

inline FormalClass random_formal(SplitMix64& rng, int max_symbols = 3) {
    static const char* names[] = {"a", "b", "c", "d"};
    FormalClass r;
    const int terms = rng.range(0, 3);
    for (int t = 0; t < terms; ++t) {
        FormalClass piece(random_lpoly(rng));
        const int syms = rng.range(0, max_symbols);
        for (int s = 0; s < syms; ++s) piece *= FormalClass::symbol(names[rng.range(0, 3)]);
        r += piece;
    }
    return r;
}

// Expansion of (1 + (L-1))^m, first n coefficients: the binomial oracle for
// truncating powers of L.
inline std::vector<Rational> binomial_L_power(int m, int n) {
    std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = Rational(binomial(m, k));
    return v;
}

// Class of { y in P^{c-1} : y_i = 0 for i in a z0-set, y_j != 0 for j in an
// s-set } by inclusion-exclusion over which required-nonzero coordinates
// vanish. Independent route to the fiber stratum class.
inline LPoly locus_class_by_inclusion_exclusion(int c, int z0, int s) {
    LPoly acc;
    for (int t = 0; t <= s; ++t) {
        LPoly piece = projective_class(c - 1 - z0 - t) * Rational(binomial(s, t));
        if (t % 2 == 0) acc += piece;
        else acc -= piece;
    }
    return acc;
}

// The invariant's definition sum expanded term by term in the full class
// ring Q[L]; truncation happens once, at the very end. Cross-checks
// serre_tilde, which works in truncated arithmetic throughout.
inline TruncatedFormalClass brute_force_serre_tilde(const SncModel& model,
                                                    const ConstructibleDatum& datum, int n) {
    FormalClass acc;
    for (const auto& [id, mult] : model.components)
        if (mult == 1) acc += datum.on_stratum(StratumKey{id});
    const LPoly one_minus_L = LPoly(1) - LPoly::var();
    for (auto it = model.components.begin(); it != model.components.end(); ++it)
        for (auto jt = std::next(it); jt != model.components.end(); ++jt) {
            const long long ai = it->second, aj = jt->second;
            if (std::gcd(ai, aj) != 1) continue;
            acc += datum.on_stratum(StratumKey{it->first, jt->first}) * one_minus_L *
                   Rational(1, ai * aj);
        }
    return formal_truncate(acc, n);
}

} // namespace testsupport
