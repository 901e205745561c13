#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "omsig/cyclotomic.hpp"
#include "omsig/errors.hpp"
#include "omsig/matrix.hpp"
#include "omsig/words.hpp"

namespace omsig {

// H_1 of the d-fold cyclic branched cover of the sphere over m points, basis e_i(k),
// 1 <= i <= m-2, 0 <= k <= d-2, with e_i(d-1) = -(e_i(0) + ... + e_i(d-2)).
struct CoverBasis {
    int m = 4;
    int d = 4;

    CoverBasis(int m_, int d_) : m(m_), d(d_) {
        if (m < 3 || d < 2 || m % d != 0) throw invalid_input("cover needs m >= 3 and d >= 2 dividing m");
    }
    int rank() const { return (m - 2) * (d - 1); }
    int genus() const { return rank() / 2; }
    int index(int i, int k) const { return (i - 1) * (d - 1) + k; }
};

using IntVector = std::vector<long>;

// Coordinates of e_i(k) for 1 <= i <= m-1 and any integer k.
// e_{m-1}(k) = sum_{a=1}^{m-2} sum_{b=1}^{a} e_a(k+b), forced by the intersection pairing.
inline IntVector e_vector(const CoverBasis& B, int i, long k) {
    IntVector v(B.rank(), 0);
    if (i < 1 || i > B.m - 1) throw invalid_input("e_i(k) needs 1 <= i <= m-1");
    if (i == B.m - 1) {
        for (int a = 1; a <= B.m - 2; ++a)
            for (int b = 1; b <= a; ++b) {
                IntVector e = e_vector(B, a, k + b);
                for (int p = 0; p < B.rank(); ++p) v[p] += e[p];
            }
        return v;
    }
    const int kk = detail::mod(k, B.d);
    if (kk <= B.d - 2) v[B.index(i, kk)] = 1;
    else
        for (int q = 0; q <= B.d - 2; ++q) v[B.index(i, q)] = -1;
    return v;
}

// e_i(k) . e_{i'}(k') from the case table, indices mod d, coinciding offsets summed.
inline int intersection_number(int m, int d, int i, long k, int i2, long k2) {
    CoverBasis B(m, d);
    if (i < 1 || i > m - 2 || i2 < 1 || i2 > m - 2) throw invalid_input("intersection_number needs 1 <= i <= m-2");
    const int delta = detail::mod(k2 - k, d);
    int s = 0;
    if (delta == 0) {
        if (i == i2 - 1) s -= 1;
        if (i == i2 + 1) s += 1;
    }
    if (delta == detail::mod(1, d)) {
        if (i == i2) s -= 1;
        if (i == i2 - 1) s += 1;
    }
    if (delta == detail::mod(-1, d)) {
        if (i == i2) s += 1;
        if (i == i2 + 1) s -= 1;
    }
    return s;
}

inline RationalMatrix intersection_matrix(int m, int d) {
    CoverBasis B(m, d);
    RationalMatrix Q(B.rank(), B.rank());
    for (int i = 1; i <= m - 2; ++i)
        for (int k = 0; k <= d - 2; ++k)
            for (int i2 = 1; i2 <= m - 2; ++i2)
                for (int k2 = 0; k2 <= d - 2; ++k2)
                    Q(B.index(i, k), B.index(i2, k2)) = intersection_number(m, d, i, k, i2, k2);
    return Q;
}

// Integral action of the lifted half twist; column p is the image of basis vector p.
inline RationalMatrix halftwist_action(int m, int d, int i) {
    CoverBasis B(m, d);
    if (i < 1 || i > m - 1) throw invalid_input("halftwist_action needs 1 <= i <= m-1");
    RationalMatrix M(B.rank(), B.rank());
    for (int l = 1; l <= m - 2; ++l)
        for (int k = 0; k <= d - 2; ++k) {
            IntVector img(B.rank(), 0);
            auto add = [&](int a, long kk, long c) {
                IntVector e = e_vector(B, a, kk);
                for (int p = 0; p < B.rank(); ++p) img[p] += c * e[p];
            };
            if (l == i - 1) {
                add(l, k, 1);
                add(l + 1, k, 1);
            } else if (l == i) {
                add(l, k - 1, -1);
            } else if (l == i + 1) {
                add(l - 1, k - 1, 1);
                add(l, k, 1);
            } else {
                add(l, k, 1);
            }
            for (int p = 0; p < B.rank(); ++p) M(p, B.index(l, k)) = img[p];
        }
    return M;
}

// Deck transformation e_i(k) -> e_i(k+1).
inline RationalMatrix deck_action(int m, int d) {
    CoverBasis B(m, d);
    RationalMatrix M(B.rank(), B.rank());
    for (int l = 1; l <= m - 2; ++l)
        for (int k = 0; k <= d - 2; ++k) {
            IntVector e = e_vector(B, l, k + 1);
            for (int p = 0; p < B.rank(); ++p) M(p, B.index(l, k)) = e[p];
        }
    return M;
}

// w_a = sum_k eta^{-jk} e_a(k) in e-coordinates, eta = omega_d.
inline std::vector<Cyclotomic> w_in_e_basis(int m, int d, int j, int a) {
    CoverBasis B(m, d);
    std::vector<Cyclotomic> v(B.rank(), Cyclotomic::zero(d));
    for (int k = 0; k <= d - 1; ++k) {
        IntVector e = e_vector(B, a, k);
        Cyclotomic c = Cyclotomic::root_of_unity(d, -static_cast<long>(j) * k);
        for (int p = 0; p < B.rank(); ++p)
            if (e[p]) v[p] += c * Rational(e[p]);
    }
    return v;
}

// Coefficients of w_{m-1} in the basis w_1..w_{m-2}: sum_{b=1}^{a} lambda^b, lambda = eta^j.
inline std::vector<Cyclotomic> w_last_coefficients(int m, int d, int j) {
    std::vector<Cyclotomic> c(m - 2, Cyclotomic::zero(d));
    for (int a = 1; a <= m - 2; ++a)
        for (int b = 1; b <= a; ++b) c[a - 1] += Cyclotomic::root_of_unity(d, static_cast<long>(j) * b);
    return c;
}

struct EigenspaceRep {
    int m = 4, d = 4, j = 1;
    int level = 4;
    Cyclotomic lambda;                          // deck eigenvalue eta^j
    CyclotomicMatrix gram;                      // x . y = x^* G y
    std::vector<CyclotomicMatrix> generators;   // s_1 .. s_{m-1}
    std::vector<CyclotomicMatrix> inverses;

    int dim() const { return m - 2; }
    CyclotomicMatrix identity() const { return CyclotomicMatrix::identity(dim(), Cyclotomic::one(level)); }
    CyclotomicMatrix deck_matrix(long e = 1) const {
        return CyclotomicMatrix::identity(dim(), Cyclotomic::one(level)) * lambda.pow(e);
    }
    WordContext context() const { return WordContext::sphere(m, d); }

    CyclotomicMatrix letter_matrix(const Letter& l) const {
        if (l.gen.family == Family::Deck) return deck_matrix(l.exponent);
        if (l.gen.family != Family::Sigma || l.gen.index < 1 || l.gen.index > m - 1)
            throw invalid_input("letter " + generator_name(l.gen) + " is not in the sphere context");
        const auto& base = l.exponent > 0 ? generators[l.gen.index - 1] : inverses[l.gen.index - 1];
        CyclotomicMatrix out = base;
        for (long k = 1; k < std::labs(l.exponent); ++k) out = out * base;
        return out;
    }

    CyclotomicMatrix image(const Word& w) const {
        if (w.context().kind != GroupKind::Sphere || w.context().m != m || w.context().d != d)
            throw invalid_input("word context does not match the representation (m=" + std::to_string(m) +
                                ", d=" + std::to_string(d) + ")");
        CyclotomicMatrix M = identity();
        for (const auto& l : w.letters()) M = M * letter_matrix(l);
        return M;
    }
};

inline void validate_mdj(int m, int d, int j) {
    if (m < 3 || d < 2 || m % d != 0) throw invalid_input("eigenspace needs m >= 3 and d >= 2 dividing m");
    if (j < 1 || j > d - 1) throw invalid_input("eigenspace needs 1 <= j <= d-1");
}

// Gram of {w_a}: diagonal d(lambda - lambda^{-1}), (a, a+1) d(lambda^{-1} - 1), (a+1, a) d(1 - lambda).
inline CyclotomicMatrix gram_closed_form(int m, int d, int j) {
    validate_mdj(m, d, j);
    const int n = m - 2;
    const Cyclotomic lam = Cyclotomic::root_of_unity(d, j), lami = Cyclotomic::root_of_unity(d, -j);
    const Cyclotomic one = Cyclotomic::one(d);
    CyclotomicMatrix G(n, n, Cyclotomic::zero(d));
    for (int a = 0; a < n; ++a) {
        G(a, a) = (lam - lami) * Rational(d);
        if (a + 1 < n) {
            G(a, a + 1) = (lami - one) * Rational(d);
            G(a + 1, a) = (one - lam) * Rational(d);
        }
    }
    return G;
}

// Gram transported from the integral intersection table.
inline CyclotomicMatrix gram_from_table(int m, int d, int j) {
    validate_mdj(m, d, j);
    const RationalMatrix Q = intersection_matrix(m, d);
    const int n = m - 2;
    std::vector<std::vector<Cyclotomic>> w;
    for (int a = 1; a <= n; ++a) w.push_back(w_in_e_basis(m, d, j, a));
    CyclotomicMatrix G(n, n, Cyclotomic::zero(d));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Cyclotomic s = Cyclotomic::zero(d);
            for (std::size_t p = 0; p < Q.rows(); ++p) {
                if (w[a][p].is_zero()) continue;
                Cyclotomic wa = w[a][p].conj();
                for (std::size_t q = 0; q < Q.cols(); ++q)
                    if (Q(p, q) != 0 && !w[b][q].is_zero()) s += wa * w[b][q] * Q(p, q);
            }
            G(a, b) = s;
        }
    return G;
}

// Action of s_i on w_1..w_{m-2} written down directly:
//   s_i w_{i-1} = w_{i-1} + w_i,  s_i w_i = -lambda^{-1} w_i,  s_i w_{i+1} = lambda^{-1} w_i + w_{i+1},
// where w_{m-1} is expanded with w_last_coefficients.
inline CyclotomicMatrix halftwist_closed_form(int m, int d, int j, int i) {
    validate_mdj(m, d, j);
    if (i < 1 || i > m - 1) throw invalid_input("halftwist_closed_form needs 1 <= i <= m-1");
    const int n = m - 2;
    const Cyclotomic lami = Cyclotomic::root_of_unity(d, -j), one = Cyclotomic::one(d);
    CyclotomicMatrix M = CyclotomicMatrix::identity(n, one);
    auto col = [&](int l) { return l - 1; };
    if (i >= 2) {
        // column w_{i-1}
        if (i <= n) M(col(i), col(i - 1)) += one;
        else {
            auto c = w_last_coefficients(m, d, j);
            for (int a = 1; a <= n; ++a) M(col(a), col(i - 1)) += c[a - 1];
        }
    }
    if (i <= n) {
        M(col(i), col(i)) = -lami;
        if (i + 1 <= n) M(col(i), col(i + 1)) = lami;
    }
    return M;
}

// Projection of the integral action to V^{eta^j} in the basis w_1..w_{m-2}.
inline CyclotomicMatrix project_to_eigenspace(const RationalMatrix& action, int m, int d, int j) {
    CoverBasis B(m, d);
    const int n = m - 2;
    const Cyclotomic denom = (Cyclotomic::one(d) - Cyclotomic::root_of_unity(d, j)).inverse();
    CyclotomicMatrix M(n, n, Cyclotomic::zero(d));
    for (int a = 1; a <= n; ++a) {
        auto w = w_in_e_basis(m, d, j, a);
        std::vector<Cyclotomic> img(B.rank(), Cyclotomic::zero(d));
        for (int p = 0; p < B.rank(); ++p)
            for (int q = 0; q < B.rank(); ++q)
                if (action(p, q) != 0 && !w[q].is_zero()) img[p] += w[q] * action(p, q);
        // coordinates from the e_b(0) entries, then confirm the full vector
        std::vector<Cyclotomic> y(n);
        for (int b = 1; b <= n; ++b) y[b - 1] = img[B.index(b, 0)] * denom;
        std::vector<Cyclotomic> back(B.rank(), Cyclotomic::zero(d));
        for (int b = 1; b <= n; ++b) {
            auto wb = w_in_e_basis(m, d, j, b);
            for (int p = 0; p < B.rank(); ++p) back[p] += y[b - 1] * wb[p];
        }
        if (back != img) throw computation_error("action does not preserve the eigenspace");
        for (int b = 0; b < n; ++b) M(b, a - 1) = y[b];
    }
    return M;
}

inline EigenspaceRep eigenspace_rep(int m, int d, int j) {
    validate_mdj(m, d, j);
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, EigenspaceRep> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({m, d, j});
        if (it != cache.end()) return it->second;
    }
    EigenspaceRep rep;
    rep.m = m;
    rep.d = d;
    rep.j = j;
    rep.level = d;
    rep.lambda = Cyclotomic::root_of_unity(d, j);
    rep.gram = gram_from_table(m, d, j);
    for (int i = 1; i <= m - 1; ++i) {
        CyclotomicMatrix M = normalize_level(project_to_eigenspace(halftwist_action(m, d, i), m, d, j), d);
        rep.inverses.push_back(normalize_level(inverse(M), d));
        rep.generators.push_back(std::move(M));
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_tuple(m, d, j), rep);
    return rep;
}

// x . y = x^* G y
inline Cyclotomic hermitian_pairing(const CyclotomicMatrix& G, const std::vector<Cyclotomic>& x,
                                    const std::vector<Cyclotomic>& y) {
    Cyclotomic s = Cyclotomic::zero(1);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (x[a].is_zero()) continue;
        Cyclotomic xa = x[a].conj();
        for (std::size_t b = 0; b < y.size(); ++b)
            if (!G(a, b).is_zero() && !y[b].is_zero()) s += xa * G(a, b) * y[b];
    }
    return s;
}

inline std::vector<Cyclotomic> apply_matrix(const CyclotomicMatrix& M, const std::vector<Cyclotomic>& v) {
    std::vector<Cyclotomic> out(M.rows(), Cyclotomic::zero(1));
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t c = 0; c < M.cols(); ++c)
            if (!M(r, c).is_zero() && !v[c].is_zero()) out[r] += M(r, c) * v[c];
    return out;
}

struct EigenvectorData {
    int i = 1;
    std::vector<Cyclotomic> vector;
    Cyclotomic eigenvalue;          // omega^{-j} zeta^i
    Cyclotomic self_intersection;   // v . v computed from the Gram
    Cyclotomic closed_form;         // 8 r d sqrt(-1) sin(pi i/r) sin(pi j/m) sin(pi (i/r - j/m))
};

// sin(pi p/q) * 2 sqrt(-1) = e^{i pi p/q} - e^{-i pi p/q}, realized at level 2q.
inline Cyclotomic two_i_sin_pi(long p, long q) {
    return Cyclotomic::root_of_unity(static_cast<int>(2 * q), p) - Cyclotomic::root_of_unity(static_cast<int>(2 * q), -p);
}

inline Cyclotomic lemma_self_intersection(int m, int j, int r, int i) {
    // 8 r d sqrt(-1) prod sin = 8 r d sqrt(-1) prod(2 sqrt(-1) sin) / (2 sqrt(-1))^3 = -r d prod(2 sqrt(-1) sin)
    const long d = m;
    Cyclotomic p = two_i_sin_pi(i, r) * two_i_sin_pi(j, m) * two_i_sin_pi(static_cast<long>(i) * m - static_cast<long>(j) * r,
                                                                             static_cast<long>(r) * m);
    return p * Rational(-r * d);
}

// Eigenvectors v_1..v_{r-1} of s_1...s_{r-1} on V^{omega^j} (d = m).
inline std::vector<EigenvectorData> eigenvectors_v(int m, int j, int r) {
    validate_mdj(m, m, j);
    if (r < 2 || r > m) throw invalid_input("eigenvectors_v needs 2 <= r <= m");
    const EigenspaceRep rep = eigenspace_rep(m, m, j);
    const int n = m - 2;
    const int L = std::lcm(m, r);
    Word sw(rep.context());
    for (int a = 1; a <= r - 1; ++a) sw.push({sigma(a), 1});
    const CyclotomicMatrix S = rep.image(sw);
    std::vector<Cyclotomic> w_prev(n, Cyclotomic::zero(m));  // w_{r-1}
    if (r - 1 <= n) w_prev[r - 2] = Cyclotomic::one(m);
    else w_prev = w_last_coefficients(m, m, j);
    const std::vector<Cyclotomic> w_prime = apply_matrix(S, w_prev);  // w'_r = s_* w_{r-1}
    std::vector<EigenvectorData> out;
    for (int i = 1; i <= r - 1; ++i) {
        std::vector<Cyclotomic> v(n, Cyclotomic::zero(L));
        auto coef = [&](int k) {
            return Cyclotomic::root_of_unity(m, static_cast<long>(k - 1) * j) *
                   Cyclotomic::root_of_unity(r, -static_cast<long>(k - 1) * i);
        };
        for (int k = 1; k <= r - 1 && k <= n; ++k) v[k - 1] += coef(k);
        if (r - 1 > n) {
            // the k = r-1 = m-1 term uses the expansion of w_{m-1}
            auto c = w_last_coefficients(m, m, j);
            for (int a = 0; a < n; ++a) v[a] += coef(r - 1) * c[a];
        }
        for (int a = 0; a < n; ++a) v[a] += coef(r) * w_prime[a];
        EigenvectorData e;
        e.i = i;
        e.vector = v;
        e.eigenvalue = Cyclotomic::root_of_unity(m, -j) * Cyclotomic::root_of_unity(r, i);
        e.self_intersection = hermitian_pairing(rep.gram, v, v);
        e.closed_form = lemma_self_intersection(m, j, r, i);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace omsig
