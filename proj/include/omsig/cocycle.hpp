#pragma once

#include <cstddef>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "omsig/cover.hpp"
#include "omsig/errors.hpp"
#include "omsig/matrix.hpp"
#include "omsig/signature.hpp"
#include "omsig/symplectic.hpp"
#include "omsig/words.hpp"

namespace omsig {

struct CocycleValue {
    int tau = 0;
    std::size_t dim = 0;  // dimension of V_{A,B}
    friend bool operator==(const CocycleValue&, const CocycleValue&) = default;
};

// Sign of <(v1,w1),(v2,w2)> = (v1+w1)^* F (I-B) w2 on V_{A,B} = {(v,w) : (A^{-1}-I)v + (B-I)w = 0},
// F the matrix of the intersection form (J, or the Gram of an eigenspace).
template <class T>
CocycleValue form_tau(const Matrix<T>& form, const Matrix<T>& A, const Matrix<T>& B) {
    const std::size_t n = A.rows();
    if (!A.square() || !B.square() || B.rows() != n || form.rows() != n || !form.square())
        throw invalid_input("form_tau: size mismatch");
    if (n == 0) return {};
    const T one = A(0, 0) - A(0, 0) + T(1);
    const Matrix<T> I = Matrix<T>::identity(n, one);
    const Matrix<T> K = kernel_basis(hstack(inverse(A) - I, B - I));
    const std::size_t k = K.cols();
    if (k == 0) return {0, 0};
    const Matrix<T> V = K.block(0, 0, n, k), W = K.block(n, 0, n, k);
    const Matrix<T> F = adjoint(V + W) * form * (I - B) * W;
    return {signature_hermitian(F).signature(), k};
}

inline int meyer_tau(const RationalMatrix& A, const RationalMatrix& B) {
    if (!A.square() || A.rows() % 2) throw invalid_input("meyer_tau needs 2g x 2g matrices");
    return form_tau(symplectic_form(static_cast<int>(A.rows() / 2)), A, B).tau;
}

template <class T>
bool preserves_form(const Matrix<T>& form, const Matrix<T>& A) {
    return adjoint(A) * form * A == form;
}

inline int hermitian_tau(const EigenspaceRep& rep, const CyclotomicMatrix& A, const CyclotomicMatrix& B) {
    if (A.rows() != static_cast<std::size_t>(rep.dim()) || B.rows() != static_cast<std::size_t>(rep.dim()))
        throw invalid_input("hermitian_tau: matrices do not match the representation");
    if (!preserves_form(rep.gram, A) || !preserves_form(rep.gram, B))
        throw invalid_input("hermitian_tau: input does not preserve the Gram matrix");
    return form_tau(rep.gram, A, B).tau;
}

// tau(A^k, A) = Sign(-F sum_{i=1}^k (A^i - A^{-i})).
template <class T>
int tau_power_bg(const Matrix<T>& form, const Matrix<T>& A, long k) {
    if (k < 1) throw invalid_input("tau_power_bg needs k >= 1");
    const Matrix<T> Ainv = inverse(A);
    Matrix<T> P = A, Q = Ainv, S = A - Ainv;
    for (long i = 2; i <= k; ++i) {
        P = P * A;
        Q = Q * Ainv;
        S += P - Q;
    }
    Matrix<T> H = form * S;
    H *= T(-1);
    return signature_hermitian(H).signature();
}

inline int tau_power_bg(const RationalMatrix& A, long k) {
    return tau_power_bg(symplectic_form(static_cast<int>(A.rows() / 2)), A, k);
}

// Incremental tau(A^k, A) for k = 1, 2, ...
template <class T>
class PowerCocycleSequence {
public:
    PowerCocycleSequence(Matrix<T> form, const Matrix<T>& A)
        : form_(std::move(form)), A_(A), Ainv_(inverse(A)), P_(A), Q_(Ainv_), S_(A - Ainv_) {}

    int next() {
        if (k_ > 0) {
            P_ = P_ * A_;
            Q_ = Q_ * Ainv_;
            S_ += P_ - Q_;
        }
        ++k_;
        Matrix<T> H = form_ * S_;
        H *= T(-1);
        return signature_hermitian(H).signature();
    }
    long index() const { return k_; }
    const Matrix<T>& current_power() const { return P_; }  // A^k after next()

private:
    Matrix<T> form_, A_, Ainv_, P_, Q_, S_;
    long k_ = 0;
};

// --- representations ------------------------------------------------------------

// rho on the genus-g surface with the standard J.
struct MeyerRep {
    using scalar_type = Rational;
    using matrix_type = RationalMatrix;

    int g = 1;
    RationalMatrix form;

    explicit MeyerRep(int g_) : g(g_), form(symplectic_form(g_)) {
        if (g < 1) throw invalid_input("Meyer context needs g >= 1");
    }
    WordContext context() const { return WordContext::surface(g); }
    RationalMatrix image(const Word& w) const { return word_to_sp(w); }
    RationalMatrix identity() const { return RationalMatrix::identity(2 * g); }
    RationalMatrix normalize(const RationalMatrix& a) const { return a; }
    std::string label() const { return "meyer g=" + std::to_string(g); }
};

// V^{eta^j} on the d-fold cover of the m-pointed sphere with its Gram.
struct OmegaRep {
    using scalar_type = Cyclotomic;
    using matrix_type = CyclotomicMatrix;

    EigenspaceRep rep;
    CyclotomicMatrix form;

    OmegaRep(int m, int d, int j) : rep(eigenspace_rep(m, d, j)), form(rep.gram) {}
    WordContext context() const { return rep.context(); }
    CyclotomicMatrix image(const Word& w) const { return normalize(rep.image(w)); }
    CyclotomicMatrix identity() const { return rep.identity(); }
    CyclotomicMatrix normalize(const CyclotomicMatrix& a) const { return normalize_level(a, rep.level); }
    std::string label() const {
        return "omega m=" + std::to_string(rep.m) + " d=" + std::to_string(rep.d) + " j=" + std::to_string(rep.j);
    }
};

// Memoized tau on a representation.  Safe to share between threads.
template <class Rep>
class CocycleEvaluator {
public:
    using matrix_type = typename Rep::matrix_type;

    explicit CocycleEvaluator(Rep rep) : rep_(std::move(rep)) {}

    const Rep& rep() const { return rep_; }

    CocycleValue tau_matrices(const matrix_type& A, const matrix_type& B) const {
        Key key{rep_.normalize(A), rep_.normalize(B)};
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        CocycleValue v = form_tau(rep_.form, key.first, key.second);
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(std::move(key), v);
        return v;
    }

    CocycleValue tau(const Word& x, const Word& y) const { return tau_matrices(rep_.image(x), rep_.image(y)); }

    std::size_t cache_size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return memo_.size();
    }

private:
    using Key = std::pair<matrix_type, matrix_type>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = hash_matrix(k.first);
            hash_combine(h, hash_matrix(k.second));
            return h;
        }
    };

    Rep rep_;
    mutable std::mutex mu_;
    mutable std::unordered_map<Key, CocycleValue, KeyHash> memo_;
};

// tau(a,b) + tau(ab,c) = tau(a,bc) + tau(b,c)
template <class Rep>
bool cocycle_identity_check(const CocycleEvaluator<Rep>& ev, const typename Rep::matrix_type& a,
                            const typename Rep::matrix_type& b, const typename Rep::matrix_type& c) {
    const int lhs = ev.tau_matrices(a, b).tau + ev.tau_matrices(a * b, c).tau;
    const int rhs = ev.tau_matrices(a, b * c).tau + ev.tau_matrices(b, c).tau;
    return lhs == rhs;
}

template <class Rep>
bool cocycle_identity_check(const CocycleEvaluator<Rep>& ev, const Word& a, const Word& b, const Word& c) {
    const auto& r = ev.rep();
    return cocycle_identity_check(ev, r.image(a), r.image(b), r.image(c));
}

// sum_{j=1}^{d-1} eta^{kj} tau_{m,d,j}(phi, psi), eta = omega_d
inline Cyclotomic g_signature(int m, int d, int k, const Word& phi, const Word& psi) {
    if (k < 0 || k > m - 1) throw invalid_input("g_signature needs 0 <= k <= m-1");
    Cyclotomic s = Cyclotomic::zero(d);
    for (int j = 1; j <= d - 1; ++j) {
        const EigenspaceRep rep = eigenspace_rep(m, d, j);
        const int t = form_tau(rep.gram, rep.image(phi), rep.image(psi)).tau;
        if (t) s += Cyclotomic::root_of_unity(d, static_cast<long>(k) * j) * Rational(t);
    }
    return s;
}

}  // namespace omsig
