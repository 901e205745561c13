#pragma once

#include <cstddef>
#include <vector>

#include "omsig/errors.hpp"
#include "omsig/matrix.hpp"

namespace omsig {

struct SignatureTriple {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t null = 0;

    int signature() const { return static_cast<int>(positive) - static_cast<int>(negative); }
    std::size_t dimension() const { return positive + negative + null; }
    std::size_t rank() const { return positive + negative; }
    friend bool operator==(const SignatureTriple&, const SignatureTriple&) = default;
};

template <class T>
bool is_hermitian(const Matrix<T>& h) {
    if (!h.square()) return false;
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t c = r; c < h.cols(); ++c)
            if (h(r, c) != conj(h(c, r))) return false;
    return true;
}

namespace detail {

// Congruence diagonalization of a hermitian matrix (symmetric when T is Rational).
// Diagonal pivots first; if only off-diagonal entries survive, the hyperbolic
// 2x2 block they span contributes one positive and one negative direction.
template <class T>
SignatureTriple inertia(Matrix<T> a) {
    const std::size_t n = a.rows();
    std::vector<bool> alive(n, true);
    SignatureTriple out;
    std::size_t remaining = n;

    auto eliminate = [&](const std::vector<std::size_t>& piv, const Matrix<T>& binv) {
        // a_rest -= a_{rest,piv} binv a_{piv,rest}
        const std::size_t k = piv.size();
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i]) rest.push_back(i);
        for (std::size_t r : rest) {
            std::vector<T> left(k);
            bool any = false;
            for (std::size_t q = 0; q < k; ++q) {
                T acc(0);
                bool started = false;
                for (std::size_t p = 0; p < k; ++p) {
                    if (is_zero(a(r, piv[p])) || is_zero(binv(p, q))) continue;
                    if (started) acc += a(r, piv[p]) * binv(p, q);
                    else {
                        acc = a(r, piv[p]) * binv(p, q);
                        started = true;
                    }
                }
                left[q] = acc;
                any = any || started;
            }
            if (!any) continue;
            for (std::size_t c : rest) {
                for (std::size_t q = 0; q < k; ++q) {
                    if (is_zero(left[q]) || is_zero(a(piv[q], c))) continue;
                    a(r, c) -= left[q] * a(piv[q], c);
                }
            }
        }
    };

    while (remaining > 0) {
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n && pivot == n; ++i)
            if (alive[i] && !is_zero(a(i, i))) pivot = i;
        if (pivot != n) {
            int s = real_sign(a(pivot, pivot));
            (s > 0 ? out.positive : out.negative) += 1;
            alive[pivot] = false;
            --remaining;
            Matrix<T> binv(1, 1);
            binv(0, 0) = scalar_inverse(a(pivot, pivot));
            eliminate({pivot}, binv);
            continue;
        }
        std::size_t pi = n, pk = n;
        for (std::size_t i = 0; i < n && pi == n; ++i) {
            if (!alive[i]) continue;
            for (std::size_t k = i + 1; k < n; ++k)
                if (alive[k] && !is_zero(a(i, k))) {
                    pi = i;
                    pk = k;
                    break;
                }
        }
        if (pi == n) break;
        out.positive += 1;
        out.negative += 1;
        alive[pi] = alive[pk] = false;
        remaining -= 2;
        // block [[0, x], [conj x, 0]] has inverse [[0, 1/conj x], [1/x, 0]]
        Matrix<T> binv(2, 2, a(pi, pk) - a(pi, pk));
        binv(0, 1) = scalar_inverse(a(pk, pi));
        binv(1, 0) = scalar_inverse(a(pi, pk));
        eliminate({pi, pk}, binv);
    }
    out.null = n - out.positive - out.negative;
    return out;
}

}  // namespace detail

inline SignatureTriple signature_symmetric(const RationalMatrix& s) {
    if (!is_hermitian(s)) throw invalid_input("signature_symmetric: matrix is not symmetric");
    return detail::inertia(s);
}

template <class T>
SignatureTriple signature_hermitian(const Matrix<T>& h) {
    if (!is_hermitian(h)) throw invalid_input("signature_hermitian: matrix is not hermitian");
    return detail::inertia(h);
}

}  // namespace omsig
