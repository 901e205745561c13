#pragma once

#include <cstdlib>

#include "omsig/errors.hpp"
#include "omsig/rational.hpp"

namespace omsig {

inline void validate_mjr(int m, int j, int r) {
    if (m < 3) throw invalid_input("closed forms need m >= 3");
    if (j < 1 || j > m - 1) throw invalid_input("closed forms need 1 <= j <= m-1");
    if (r < 2 || r > m) throw invalid_input("closed forms need 2 <= r <= m");
}

// phi_{m,j}(s_1 ... s_{r-1}) as stated: 2(r-1) j (m-j) / (m (m-1))
inline Rational closed_form_phi(int m, int j, int r) {
    validate_mjr(m, j, r);
    return make_rational(2L * (r - 1) * j * (m - j), static_cast<long>(m) * (m - 1));
}

namespace detail {
// rj/m - [rj/m] - 1/2
inline Rational frac_shift(int m, int j, int r) {
    const Rational x = make_rational(static_cast<long>(r) * j, m);
    return x - floor_rational(x) - Rational(1, 2);
}
}  // namespace detail

// -(2/r) { jr(m-j)(m-r) / (m^2 (m-1)) + (rj/m - [rj/m] - 1/2)^2 - 1/4 }
inline Rational closed_form_barphi(int m, int j, int r) {
    validate_mjr(m, j, r);
    const Rational a = make_rational(static_cast<long>(j) * r * (m - j) * (m - r), static_cast<long>(m) * m * (m - 1));
    const Rational f = detail::frac_shift(m, j, r);
    return -make_rational(2, r) * (a + f * f - Rational(1, 4));
}

// sign of sin(pi p / q), q > 0
inline int sin_sign(long p, long q) {
    if (q <= 0) throw invalid_input("sin_sign needs q > 0");
    long t = p % (2 * q);
    if (t < 0) t += 2 * q;
    if (t == 0 || t == q) return 0;
    return t < q ? 1 : -1;
}

// tau(s^k, s) for s = s_1 ... s_{r-1}:
// sum_{i=1}^{r-1} sign(sin k pi (i/r - j/m) sin (k+1) pi (i/r - j/m)).
// The term with i/r = j/m is +1 for r < m and 0 for r = m.
inline int tau_power_closed_form(int m, int j, int r, long k) {
    validate_mjr(m, j, r);
    if (k < 1) throw invalid_input("tau_power_closed_form needs k >= 1");
    const long q = static_cast<long>(r) * m;
    int s = 0;
    for (int i = 1; i <= r - 1; ++i) {
        const long p = static_cast<long>(i) * m - static_cast<long>(j) * r;
        if (p == 0) {
            if (r < m) s += 1;
            continue;
        }
        s += sin_sign(k * p, q) * sin_sign((k + 1) * p, q);
    }
    return s;
}

// sum_{i=1}^{r-1} (rm - 2|mi - rj|), the value the proof derives for sum_{k=1}^{rm} tau(s^k, s)
inline long power_sum_tau(int m, int j, int r) {
    validate_mjr(m, j, r);
    long s = 0;
    for (int i = 1; i <= r - 1; ++i) s += static_cast<long>(r) * m - 2 * std::labs(static_cast<long>(m) * i - static_cast<long>(r) * j);
    return s;
}

// sum_{k=1}^{rm} tau_power_closed_form; differs from power_sum_tau by rm exactly when r = m
inline long power_sum_tau_resolved(int m, int j, int r) {
    validate_mjr(m, j, r);
    long s = 0;
    for (long k = 1; k <= static_cast<long>(r) * m; ++k) s += tau_power_closed_form(m, j, r, k);
    return s;
}

// (2/r) { (rj/m - [rj/m] - 1/2)^2 + r^2 j (m-j) / m^2 - 1/4 }; equals closed_form_phi - closed_form_barphi
inline Rational gap_closed_form(int m, int j, int r) {
    validate_mjr(m, j, r);
    const Rational f = detail::frac_shift(m, j, r);
    const Rational b = make_rational(static_cast<long>(r) * r * j * (m - j), static_cast<long>(m) * m);
    return make_rational(2, r) * (f * f + b - Rational(1, 4));
}

// the same bracket with the middle term subtracted
inline Rational gap_statement_form(int m, int j, int r) {
    validate_mjr(m, j, r);
    const Rational f = detail::frac_shift(m, j, r);
    const Rational b = make_rational(static_cast<long>(r) * r * j * (m - j), static_cast<long>(m) * m);
    return make_rational(2, r) * (f * f - b - Rational(1, 4));
}

// phi - barphi from the resolved power sum
inline Rational gap_resolved(int m, int j, int r) {
    return make_rational(power_sum_tau_resolved(m, j, r), static_cast<long>(r) * m);
}

}  // namespace omsig
