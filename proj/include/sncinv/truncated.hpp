#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sncinv/lpoly.hpp"
#include "sncinv/rational.hpp"

namespace sncinv {

// Elements of Q[L]/(L-1)^n held in the (L-1)-power basis:
// coeffs()[k] is the coefficient of (L-1)^k, 0 <= k < modulus_power().
// Equality is componentwise and requires equal modulus powers.
class TruncatedClass {
public:
    explicit TruncatedClass(int modulus_power)
        : n_(modulus_power), coeffs_(check_power(modulus_power), Rational(0)) {}

    TruncatedClass(int modulus_power, std::vector<Rational> coeffs)
        : n_(modulus_power), coeffs_(std::move(coeffs)) {
        check_power(n_);
        coeffs_.resize(static_cast<std::size_t>(n_), Rational(0));
    }

    int modulus_power() const { return n_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    TruncatedClass operator-() const {
        TruncatedClass r(n_);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) r.coeffs_[k] = -coeffs_[k];
        return r;
    }

    TruncatedClass& operator+=(const TruncatedClass& o) {
        require_same(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    TruncatedClass& operator-=(const TruncatedClass& o) {
        require_same(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    friend TruncatedClass operator+(TruncatedClass a, const TruncatedClass& b) { return a += b; }
    friend TruncatedClass operator-(TruncatedClass a, const TruncatedClass& b) { return a -= b; }

    friend TruncatedClass operator*(const TruncatedClass& a, const TruncatedClass& b) {
        a.require_same(b);
        TruncatedClass r(a.n_);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; i + j < b.coeffs_.size(); ++j)
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }

    friend TruncatedClass operator*(const TruncatedClass& a, const Rational& s) {
        TruncatedClass r(a.n_);
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r.coeffs_[k] = a.coeffs_[k] * s;
        return r;
    }
    friend TruncatedClass operator*(const Rational& s, const TruncatedClass& a) { return a * s; }

    // Image in Q[L]/(L-1)^m for m <= modulus_power.
    TruncatedClass truncate_to(int m) const {
        if (m < 1 || m > n_) throw std::logic_error("truncate_to: bad modulus power");
        TruncatedClass r(m);
        for (int k = 0; k < m; ++k) r.coeffs_[static_cast<std::size_t>(k)] = coeffs_[static_cast<std::size_t>(k)];
        return r;
    }

    bool operator==(const TruncatedClass&) const = default;

    std::string str() const {
        std::string s;
        for (int k = 0; k < n_; ++k) {
            const std::string c = format_rational(coeffs_[static_cast<std::size_t>(k)]);
            std::string term = c;
            if (k == 1) term += "*(L-1)";
            else if (k > 1) term += "*(L-1)^" + std::to_string(k);
            s += (k == 0 ? "" : " + ") + term;
        }
        return s;
    }

private:
    int n_;
    std::vector<Rational> coeffs_;

    static int check_power(int n) {
        if (n < 1) throw std::logic_error("TruncatedClass: modulus power must be >= 1");
        return n;
    }
    void require_same(const TruncatedClass& o) const {
        if (n_ != o.n_) throw std::logic_error("TruncatedClass: mixed modulus powers");
    }
};

inline TruncatedClass truncate(const LPoly& p, int n) {
    TruncatedClass r(n);
    std::vector<Rational> basis = p.shifted_basis();
    std::vector<Rational> coeffs(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t k = 0; k < coeffs.size() && k < basis.size(); ++k) coeffs[k] = basis[k];
    return TruncatedClass(n, std::move(coeffs));
}

} // namespace sncinv
