#pragma once

#include <mpfr.h>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "omsig/errors.hpp"
#include "omsig/rational.hpp"

namespace omsig {

// Integer polynomial, coefficients from the constant term upward.
using IntPolynomial = std::vector<long>;

namespace detail {

inline IntPolynomial poly_divide_exact(IntPolynomial num, const IntPolynomial& den) {
    // den is monic
    if (num.size() < den.size()) return {0};
    IntPolynomial q(num.size() - den.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        long c = num[i + den.size() - 1];
        q[i] = c;
        if (c == 0) continue;
        for (std::size_t k = 0; k < den.size(); ++k) num[i + k] -= c * den[k];
    }
    for (long r : num)
        if (r != 0) throw computation_error("inexact polynomial division");
    return q;
}

inline IntPolynomial poly_multiply(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
    return out;
}

}  // namespace detail

inline int euler_phi(int m) {
    int result = m;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

inline IntPolynomial cyclotomic_polynomial(int m) {
    if (m < 1) throw invalid_input("cyclotomic_polynomial needs m >= 1");
    static std::mutex mu;
    static std::map<int, IntPolynomial> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    IntPolynomial xm(m + 1, 0);
    xm[0] = -1;
    xm[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) xm = detail::poly_divide_exact(xm, cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(m, xm);
    return xm;
}

namespace detail {

struct LevelData {
    int level = 1;
    int degree = 1;
    IntPolynomial modulus;
    std::vector<std::vector<long>> powers;  // omega^k reduced, k in [0, level)
};

inline const LevelData& level_data(int m) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<LevelData>> table;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(m);
    if (it != table.end()) return *it->second;
    auto data = std::make_unique<LevelData>();
    data->level = m;
    data->modulus = cyclotomic_polynomial(m);
    data->degree = static_cast<int>(data->modulus.size()) - 1;
    const int n = data->degree;
    std::vector<long> cur(n, 0);
    cur[0] = 1;
    for (int k = 0; k < m; ++k) {
        data->powers.push_back(cur);
        // multiply by x and reduce by the monic modulus
        long top = cur[n - 1];
        for (int i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (int i = 0; i < n; ++i) cur[i] -= top * data->modulus[i];
    }
    const LevelData& ref = *data;
    table.emplace(m, std::move(data));
    return ref;
}

inline int mod(long a, int m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace detail

// Element of Q(omega_m), omega_m = exp(2 pi i / m), stored as the reduced residue mod Phi_m.
class Cyclotomic {
public:
    Cyclotomic() : lvl_(&detail::level_data(1)), c_(1) {}
    Cyclotomic(const Rational& q) : lvl_(&detail::level_data(1)), c_{q} {}  // NOLINT
    Cyclotomic(long v) : Cyclotomic(Rational(v)) {}                         // NOLINT
    Cyclotomic(int v) : Cyclotomic(Rational(v)) {}                          // NOLINT

    static Cyclotomic zero(int m) { return Cyclotomic(&detail::level_data(m)); }
    static Cyclotomic one(int m) {
        Cyclotomic x = zero(m);
        x.c_[0] = 1;
        return x;
    }
    static Cyclotomic rational(int m, const Rational& q) {
        Cyclotomic x = zero(m);
        x.c_[0] = q;
        return x;
    }
    // omega_m^k for any integer k
    static Cyclotomic root_of_unity(int m, long k) {
        if (m < 1) throw invalid_input("level must be positive");
        Cyclotomic x = zero(m);
        const auto& p = x.lvl_->powers[detail::mod(k, m)];
        for (int i = 0; i < x.degree(); ++i) x.c_[i] = p[i];
        return x;
    }
    static Cyclotomic from_coeffs(int m, std::vector<Rational> coeffs) {
        Cyclotomic x = zero(m);
        if (static_cast<int>(coeffs.size()) != x.degree())
            throw invalid_input("coefficient list length must be phi(" + std::to_string(m) + ")");
        x.c_ = std::move(coeffs);
        return x;
    }
    // sum_k a_k omega_m^k for an arbitrary-length list
    static Cyclotomic from_power_sum(int m, const std::vector<Rational>& a) {
        Cyclotomic x = zero(m);
        for (std::size_t k = 0; k < a.size(); ++k) x.add_power(static_cast<long>(k), a[k]);
        return x;
    }

    int level() const { return lvl_->level; }
    int degree() const { return lvl_->degree; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rational to_rational() const {
        if (!is_rational()) throw invalid_input("cyclotomic number is not rational");
        return c_[0];
    }

    Cyclotomic lift(int target) const {
        if (target % level() != 0)
            throw invalid_input("cannot lift level " + std::to_string(level()) + " to " + std::to_string(target));
        if (target == level()) return *this;
        const int step = target / level();
        Cyclotomic x = zero(target);
        for (int i = 0; i < degree(); ++i)
            if (c_[i] != 0) x.add_power(static_cast<long>(i) * step, c_[i]);
        return x;
    }

    // Galois action omega -> omega^a, gcd(a, m) = 1.
    Cyclotomic galois(long a) const {
        const int m = level();
        if (std::gcd(static_cast<long>(detail::mod(a, m)), static_cast<long>(m)) != 1 && m > 1)
            throw invalid_input("galois exponent must be a unit");
        Cyclotomic x = zero(m);
        for (int i = 0; i < degree(); ++i)
            if (c_[i] != 0) x.add_power(a * i, c_[i]);
        return x;
    }
    Cyclotomic conj() const { return level() <= 2 ? *this : galois(-1); }
    bool is_real() const { return conj() == *this; }

    Cyclotomic inverse() const {
        if (is_zero()) throw invalid_input("division by zero in cyclotomic field");
        if (is_rational()) return rational(level(), 1 / c_[0]);
        const int m = level();
        Cyclotomic y = one(m);
        for (int a = 2; a < m; ++a)
            if (std::gcd(a, m) == 1) y *= galois(a);
        Cyclotomic n = *this * y;
        return y * Rational(1 / n.to_rational());
    }

    Cyclotomic pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cyclotomic result = one(level()), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        if (o.level() != level()) return *this = *this + o;
        for (int i = 0; i < degree(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) {
        if (o.level() != level()) return *this = *this - o;
        for (int i = 0; i < degree(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator*=(const Rational& q) {
        for (auto& c : c_) c *= q;
        return *this;
    }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this * o.inverse(); }

    friend Cyclotomic operator-(Cyclotomic a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level() == b.level()) {
            Cyclotomic r = a;
            r += b;
            return r;
        }
        int L = std::lcm(a.level(), b.level());
        return a.lift(L) + b.lift(L);
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level() == b.level()) {
            Cyclotomic r = a;
            r -= b;
            return r;
        }
        int L = std::lcm(a.level(), b.level());
        return a.lift(L) - b.lift(L);
    }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level() != b.level()) {
            if (a.level() == 1) return b * a.c_[0];
            if (b.level() == 1) return a * b.c_[0];
            int L = std::lcm(a.level(), b.level());
            return a.lift(L) * b.lift(L);
        }
        const int n = a.degree();
        if (a.is_rational()) return b * a.c_[0];
        if (b.is_rational()) return a * b.c_[0];
        std::vector<Rational> raw(2 * n - 1);
        for (int i = 0; i < n; ++i) {
            if (a.c_[i] == 0) continue;
            for (int k = 0; k < n; ++k)
                if (b.c_[k] != 0) raw[i + k] += a.c_[i] * b.c_[k];
        }
        Cyclotomic r = zero(a.level());
        for (int i = 0; i < n; ++i) r.c_[i] = std::move(raw[i]);
        for (int k = n; k < 2 * n - 1; ++k)
            if (raw[k] != 0) r.add_power(k, raw[k]);
        return r;
    }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& q) {
        a *= q;
        return a;
    }
    friend Cyclotomic operator*(const Rational& q, Cyclotomic a) {
        a *= q;
        return a;
    }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.level() == b.level()) return a.c_ == b.c_;
        int L = std::lcm(a.level(), b.level());
        return a.lift(L).c_ == b.lift(L).c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // Hash of the representation at the current level; callers normalize levels first.
    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(level());
        for (const auto& c : c_) hash_combine(h, hash_rational(c));
        return h;
    }

    std::complex<double> embed() const {
        std::complex<double> s = 0;
        const double two_pi = 6.283185307179586476925286766559;
        for (int i = 0; i < degree(); ++i)
            if (c_[i] != 0) s += c_[i].get_d() * std::polar(1.0, two_pi * i / level());
        return s;
    }

    std::string to_string() const;

private:
    explicit Cyclotomic(const detail::LevelData* lvl) : lvl_(lvl), c_(lvl->degree) {}

    void add_power(long k, const Rational& q) {
        const auto& p = lvl_->powers[detail::mod(k, level())];
        for (int i = 0; i < degree(); ++i)
            if (p[i] != 0) c_[i] += q * p[i];
    }

    const detail::LevelData* lvl_;
    std::vector<Rational> c_;
};

inline std::string Cyclotomic::to_string() const {
    std::string out;
    for (int i = 0; i < degree(); ++i) {
        if (c_[i] == 0) continue;
        std::string term = c_[i].get_str();
        if (i > 0) term += "*w" + std::to_string(level()) + (i > 1 ? "^" + std::to_string(i) : "");
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

// Reduce x to the subfield Q(omega_m); throws if x is not in it.
inline Cyclotomic lower(const Cyclotomic& x, int m) {
    const int L = x.level();
    if (L % m != 0) throw invalid_input("lower: target level must divide the current level");
    if (L == m) return x;
    // solve sum_i a_i lift(omega_m^i) = x over Q
    const int n = euler_phi(m), rows = x.degree();
    std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(n + 1));
    for (int i = 0; i < n; ++i) {
        auto col = Cyclotomic::root_of_unity(m, i).lift(L);
        for (int r = 0; r < rows; ++r) aug[r][i] = col.coeffs()[r];
    }
    for (int r = 0; r < rows; ++r) aug[r][n] = x.coeffs()[r];
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < n && row < rows; ++col) {
        int p = row;
        while (p < rows && aug[p][col] == 0) ++p;
        if (p == rows) continue;
        std::swap(aug[p], aug[row]);
        for (int r = 0; r < rows; ++r) {
            if (r == row || aug[r][col] == 0) continue;
            Rational f = aug[r][col] / aug[row][col];
            for (int k = col; k <= n; ++k) aug[r][k] -= f * aug[row][k];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < rows; ++r)
        if (aug[r][n] != 0) throw invalid_input("element is not in the requested subfield");
    std::vector<Rational> coeffs(n);
    for (int r = 0; r < row; ++r) coeffs[pivot_col[r]] = aug[r][n] / aug[r][pivot_col[r]];
    return Cyclotomic::from_coeffs(m, coeffs);
}

// Smallest level at which x is defined.
inline Cyclotomic minimal_level(const Cyclotomic& x) {
    const int L = x.level();
    for (int m = 1; m < L; ++m) {
        if (L % m) continue;
        try {
            return lower(x, m);
        } catch (const invalid_input&) {
        }
    }
    return x;
}

namespace detail {

struct MpfrScope {
    mpfr_t v;
    explicit MpfrScope(mpfr_prec_t p) { mpfr_init2(v, p); }
    ~MpfrScope() { mpfr_clear(v); }
    MpfrScope(const MpfrScope&) = delete;
    MpfrScope& operator=(const MpfrScope&) = delete;
};

// Real part of x at precision p, plus an upper bound for the absolute error.
inline void real_part_mpfr(const Cyclotomic& x, mpfr_prec_t p, mpfr_t out, mpfr_t err) {
    const int m = x.level();
    MpfrScope pi(p + 16), angle(p + 16), term(p + 16), coef(p + 16), l1(64);
    mpfr_const_pi(pi.v, MPFR_RNDN);
    mpfr_set_zero(out, 1);
    mpfr_set_zero(l1.v, 1);
    for (int i = 0; i < x.degree(); ++i) {
        const Rational& c = x.coeffs()[i];
        if (c == 0) continue;
        mpfr_mul_ui(angle.v, pi.v, 2UL * static_cast<unsigned long>(i), MPFR_RNDN);
        mpfr_div_ui(angle.v, angle.v, static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_cos(term.v, angle.v, MPFR_RNDN);
        mpfr_set_q(coef.v, c.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(term.v, term.v, coef.v, MPFR_RNDN);
        mpfr_add(out, out, term.v, MPFR_RNDN);
        mpfr_abs(coef.v, coef.v, MPFR_RNDU);
        mpfr_add(l1.v, l1.v, coef.v, MPFR_RNDU);
    }
    // each term carries a few ulps of relative error at precision p
    mpfr_add_ui(l1.v, l1.v, 1, MPFR_RNDU);
    mpfr_mul_ui(l1.v, l1.v, static_cast<unsigned long>(x.degree() + 2), MPFR_RNDU);
    mpfr_mul_2si(err, l1.v, -static_cast<long>(p) + 7, MPFR_RNDU);
}

}  // namespace detail

// Sign of a real element under omega_m -> exp(2 pi i / m).
inline int real_sign(const Cyclotomic& x) {
    if (!x.is_real()) throw invalid_input("real_sign: element is not real: " + x.to_string());
    if (x.is_zero()) return 0;
    if (x.is_rational()) return sgn(x.coeffs()[0]);
    for (mpfr_prec_t p = 64; p <= (mpfr_prec_t(1) << 20); p *= 2) {
        detail::MpfrScope val(p), err(64), absval(p);
        detail::real_part_mpfr(x, p, val.v, err.v);
        mpfr_abs(absval.v, val.v, MPFR_RNDN);
        if (mpfr_cmp(absval.v, err.v) > 0) return mpfr_sgn(val.v);
    }
    throw computation_error("real_sign did not separate a nonzero value from 0");
}

inline int real_sign(const Rational& q) { return sgn(q); }

// Enclosure [lo, hi] of the real part of x.
inline std::pair<double, double> real_interval(const Cyclotomic& x, mpfr_prec_t p = 64) {
    detail::MpfrScope val(p), err(64), lo(p + 8), hi(p + 8);
    detail::real_part_mpfr(x, p, val.v, err.v);
    mpfr_sub(lo.v, val.v, err.v, MPFR_RNDD);
    mpfr_add(hi.v, val.v, err.v, MPFR_RNDU);
    return {mpfr_get_d(lo.v, MPFR_RNDD), mpfr_get_d(hi.v, MPFR_RNDU)};
}

// Scalar helpers used by the matrix templates.
inline Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }
inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline Rational conj(const Rational& q) { return q; }
inline bool is_zero(const Rational& q) { return q == 0; }

}  // namespace omsig
