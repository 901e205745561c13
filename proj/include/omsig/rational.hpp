#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "omsig/errors.hpp"

namespace omsig {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw invalid_input("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "p", "-p", "p/q".  Whitespace is not allowed.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw invalid_input("empty rational");
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw invalid_input("malformed rational '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) throw invalid_input("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

inline Rational floor_rational(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

inline std::size_t hash_integer(const Integer& z) {
    const auto* p = z.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9e3779b97f4a7c15ULL;
    int n = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
    for (int i = 0; i < n && i < 4; ++i)
        h ^= static_cast<std::size_t>(p->_mp_d[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline std::size_t hash_rational(const Rational& q) {
    return hash_integer(q.get_num()) * 31 + hash_integer(q.get_den());
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace omsig
