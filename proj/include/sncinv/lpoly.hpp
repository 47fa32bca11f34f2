#pragma once

#include <map>
#include <string>
#include <vector>

#include "sncinv/rational.hpp"

namespace sncinv {

// Univariate polynomials in L, the class of the affine line, with exact
// rational coefficients. Canonical form: no zero coefficients stored.
class LPoly {
public:
    LPoly() = default;
    LPoly(const Rational& c) { set(0, c); }
    LPoly(int c) { set(0, Rational(c)); }

    static LPoly var() { return monomial(1, 1); }

    static LPoly monomial(int degree, const Rational& c) {
        LPoly p;
        p.set(degree, c);
        return p;
    }

    static LPoly power_of_L(int k) { return monomial(k, 1); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    Rational coeff(int degree) const {
        auto it = coeffs_.find(degree);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    const std::map<int, Rational>& coeffs() const { return coeffs_; }

    LPoly operator-() const {
        LPoly r;
        for (const auto& [d, c] : coeffs_) r.coeffs_.emplace(d, -c);
        return r;
    }

    LPoly& operator+=(const LPoly& o) {
        for (const auto& [d, c] : o.coeffs_) add(d, c);
        return *this;
    }
    LPoly& operator-=(const LPoly& o) {
        for (const auto& [d, c] : o.coeffs_) add(d, -c);
        return *this;
    }
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }

    friend LPoly operator*(const LPoly& a, const LPoly& b) {
        LPoly r;
        for (const auto& [da, ca] : a.coeffs_)
            for (const auto& [db, cb] : b.coeffs_) r.add(da + db, ca * cb);
        return r;
    }
    LPoly& operator*=(const LPoly& o) { return *this = *this * o; }

    friend LPoly operator*(const LPoly& a, const Rational& s) {
        LPoly r;
        if (s == 0) return r;
        for (const auto& [d, c] : a.coeffs_) r.coeffs_.emplace(d, c * s);
        return r;
    }
    friend LPoly operator*(const Rational& s, const LPoly& a) { return a * s; }

    LPoly pow(int k) const {
        LPoly r(1);
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    Rational eval(const Rational& q) const {
        // Horner over the dense range.
        Rational acc = 0;
        int prev = -1;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            if (prev >= 0)
                for (int i = prev; i > it->first; --i) acc *= q;
            acc += it->second;
            prev = it->first;
        }
        if (prev > 0)
            for (int i = prev; i > 0; --i) acc *= q;
        return acc;
    }

    // Coefficients in the (L-1)-power basis: p(L) = sum v[k] (L-1)^k.
    // Computed by repeated synthetic division by (L-1); empty for p = 0.
    std::vector<Rational> shifted_basis() const {
        std::vector<Rational> v;
        if (is_zero()) return v;
        std::vector<Rational> cur(static_cast<std::size_t>(degree()) + 1, Rational(0));
        for (const auto& [d, c] : coeffs_) cur[static_cast<std::size_t>(d)] = c;
        while (!cur.empty()) {
            // synthetic division by (L-1): cur[0] becomes the remainder,
            // cur[1..] the quotient
            for (std::size_t i = cur.size() - 1; i-- > 0;) cur[i] += cur[i + 1];
            v.push_back(cur.front());
            cur.erase(cur.begin());
        }
        return v;
    }

    static LPoly from_shifted_basis(const std::vector<Rational>& v) {
        LPoly shifted = var() - LPoly(1);
        LPoly acc;
        for (auto it = v.rbegin(); it != v.rend(); ++it) acc = acc * shifted + LPoly(*it);
        return acc;
    }

    bool operator==(const LPoly&) const = default;

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (const auto& [d, c] : coeffs_) {
            std::string term;
            if (d == 0) {
                term = format_rational(c);
            } else {
                std::string lp = d == 1 ? "L" : "L^" + std::to_string(d);
                if (c == 1) term = lp;
                else if (c == -1) term = "-" + lp;
                else term = format_rational(c) + "*" + lp;
            }
            if (s.empty()) { s = term; continue; }
            if (!term.empty() && term[0] == '-')
                s += " - " + term.substr(1);
            else
                s += " + " + term;
        }
        return s;
    }

private:
    std::map<int, Rational> coeffs_;

    void set(int d, const Rational& c) {
        if (c != 0) coeffs_[d] = c;
    }
    void add(int d, const Rational& c) {
        auto it = coeffs_.find(d);
        if (it == coeffs_.end()) {
            if (c != 0) coeffs_.emplace(d, c);
            return;
        }
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
};

// Class of projective dim-space: 1 + L + ... + L^dim; zero for dim < 0.
inline LPoly projective_class(int dim) {
    LPoly r;
    for (int k = 0; k <= dim; ++k) r += LPoly::power_of_L(k);
    return r;
}

} // namespace sncinv
