#pragma once

#include <optional>
#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sncinv {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Strict grammar: -?digits(/digits)?, denominator nonzero. Anything else
// (signs on the denominator, whitespace, floats) is rejected.
inline std::optional<Rational> parse_rational(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && s[i] == '-') { neg = true; ++i; }
    std::size_t num_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == num_begin) return std::nullopt;
    BigInt num(s.substr(num_begin, i - num_begin));
    BigInt den = 1;
    if (i < s.size()) {
        if (s[i] != '/') return std::nullopt;
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == den_begin || i != s.size()) return std::nullopt;
        den = BigInt(s.substr(den_begin, i - den_begin));
        if (den == 0) return std::nullopt;
    }
    if (i != s.size()) return std::nullopt;
    if (neg) num = -num;
    return Rational(num, den);
}

inline std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << r; // "p" or "p/q", canonical sign and gcd
    return os.str();
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) { r *= (n - i); r /= (i + 1); }
    return r;
}

// Inverse of a mod m (m >= 1), or nullopt when gcd(a, m) != 1.
inline std::optional<BigInt> mod_inverse(BigInt a, const BigInt& m) {
    if (m == 1) return BigInt(0);
    BigInt r0 = m, r1 = ((a % m) + m) % m;
    BigInt t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1; r0 = r1; r1 = r2;
        BigInt t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    if (r0 != 1) return std::nullopt;
    return ((t0 % m) + m) % m;
}

} // namespace sncinv
