#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "sncinv/lpoly.hpp"
#include "sncinv/truncated.hpp"

namespace sncinv {

// Finite multiset of base-symbol names; the empty multiset is the unit.
// Symbols stand for classes of varieties that are not polynomials in L;
// monomials multiply freely and commutatively.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::string> syms) : syms_(std::move(syms)) {
        std::sort(syms_.begin(), syms_.end());
    }
    static Monomial unit() { return Monomial(); }
    static Monomial symbol(const std::string& name) { return Monomial({name}); }

    bool is_unit() const { return syms_.empty(); }
    const std::vector<std::string>& symbols() const { return syms_; }

    Monomial operator*(const Monomial& o) const {
        std::vector<std::string> merged;
        merged.reserve(syms_.size() + o.syms_.size());
        std::merge(syms_.begin(), syms_.end(), o.syms_.begin(), o.syms_.end(),
                   std::back_inserter(merged));
        Monomial r;
        r.syms_ = std::move(merged);
        return r;
    }

    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const { return syms_ < o.syms_; }

    std::string str() const {
        if (syms_.empty()) return "1";
        std::string s;
        for (const auto& name : syms_) {
            if (!s.empty()) s += "*";
            s += "[" + name + "]";
        }
        return s;
    }

private:
    std::vector<std::string> syms_;
};

// The ambient class ring: the free commutative ring on base symbols with
// Q[L] coefficients. Canonical form: no zero coefficient polynomials.
class FormalClass {
public:
    FormalClass() = default;
    FormalClass(const LPoly& p) { add_term(Monomial::unit(), p); }
    FormalClass(const Rational& c) : FormalClass(LPoly(c)) {}
    FormalClass(int c) : FormalClass(LPoly(c)) {}

    static FormalClass symbol(const std::string& name) {
        FormalClass r;
        r.add_term(Monomial::symbol(name), LPoly(1));
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, LPoly>& terms() const { return terms_; }

    FormalClass operator-() const {
        FormalClass r;
        for (const auto& [m, p] : terms_) r.terms_.emplace(m, -p);
        return r;
    }

    FormalClass& operator+=(const FormalClass& o) {
        for (const auto& [m, p] : o.terms_) add_term(m, p);
        return *this;
    }
    FormalClass& operator-=(const FormalClass& o) {
        for (const auto& [m, p] : o.terms_) add_term(m, -p);
        return *this;
    }
    friend FormalClass operator+(FormalClass a, const FormalClass& b) { return a += b; }
    friend FormalClass operator-(FormalClass a, const FormalClass& b) { return a -= b; }

    friend FormalClass operator*(const FormalClass& a, const FormalClass& b) {
        FormalClass r;
        for (const auto& [ma, pa] : a.terms_)
            for (const auto& [mb, pb] : b.terms_) r.add_term(ma * mb, pa * pb);
        return r;
    }
    FormalClass& operator*=(const FormalClass& o) { return *this = *this * o; }

    friend FormalClass operator*(const FormalClass& a, const LPoly& p) {
        FormalClass r;
        for (const auto& [m, q] : a.terms_) r.add_term(m, q * p);
        return r;
    }
    friend FormalClass operator*(const LPoly& p, const FormalClass& a) { return a * p; }
    friend FormalClass operator*(const FormalClass& a, const Rational& s) { return a * LPoly(s); }
    friend FormalClass operator*(const Rational& s, const FormalClass& a) { return a * LPoly(s); }

    bool operator==(const FormalClass&) const = default;

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, p] : terms_) {
            if (!s.empty()) s += " + ";
            if (m.is_unit()) s += p.str();
            else s += m.str() + "*(" + p.str() + ")";
        }
        return s;
    }

private:
    std::map<Monomial, LPoly> terms_;

    void add_term(const Monomial& m, const LPoly& p) {
        if (p.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, p);
            return;
        }
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
};

// Symbol combinations with coefficients in Q[L]/(L-1)^n.
class TruncatedFormalClass {
public:
    explicit TruncatedFormalClass(int modulus_power) : n_(modulus_power) {
        if (n_ < 1) throw std::logic_error("TruncatedFormalClass: modulus power must be >= 1");
    }

    int modulus_power() const { return n_; }
    const std::map<Monomial, TruncatedClass>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const TruncatedClass& c) {
        if (c.modulus_power() != n_) throw std::logic_error("TruncatedFormalClass: mixed modulus powers");
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    TruncatedFormalClass operator-() const {
        TruncatedFormalClass r(n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    TruncatedFormalClass& operator+=(const TruncatedFormalClass& o) {
        require_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    TruncatedFormalClass& operator-=(const TruncatedFormalClass& o) {
        require_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend TruncatedFormalClass operator+(TruncatedFormalClass a, const TruncatedFormalClass& b) { return a += b; }
    friend TruncatedFormalClass operator-(TruncatedFormalClass a, const TruncatedFormalClass& b) { return a -= b; }

    friend TruncatedFormalClass operator*(const TruncatedFormalClass& a, const TruncatedClass& c) {
        TruncatedFormalClass r(a.n_);
        for (const auto& [m, t] : a.terms_) r.add_term(m, t * c);
        return r;
    }
    friend TruncatedFormalClass operator*(const TruncatedFormalClass& a, const Rational& s) {
        TruncatedFormalClass r(a.n_);
        for (const auto& [m, t] : a.terms_) r.add_term(m, t * s);
        return r;
    }
    friend TruncatedFormalClass operator*(const Rational& s, const TruncatedFormalClass& a) { return a * s; }

    TruncatedFormalClass truncate_to(int m) const {
        TruncatedFormalClass r(m);
        for (const auto& [mon, c] : terms_) r.add_term(mon, c.truncate_to(m));
        return r;
    }

    bool operator==(const TruncatedFormalClass&) const = default;

    std::string str() const {
        if (terms_.empty()) {
            return TruncatedClass(n_).str();
        }
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            if (m.is_unit()) s += "(" + c.str() + ")";
            else s += m.str() + "*(" + c.str() + ")";
        }
        return s;
    }

private:
    int n_;
    std::map<Monomial, TruncatedClass> terms_;

    void require_same(const TruncatedFormalClass& o) const {
        if (n_ != o.n_) throw std::logic_error("TruncatedFormalClass: mixed modulus powers");
    }
};

inline TruncatedFormalClass formal_truncate(const FormalClass& a, int n) {
    TruncatedFormalClass r(n);
    for (const auto& [m, p] : a.terms()) r.add_term(m, truncate(p, n));
    return r;
}

} // namespace sncinv
