#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "omsig/cyclotomic.hpp"
#include "omsig/errors.hpp"
#include "omsig/rational.hpp"

namespace omsig {

// Dense row-major matrix over Rational or Cyclotomic.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw invalid_input("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n, const T& one = T(1)) {
        Matrix I(n, n, one - one);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = one;
        return I;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<T>& data() const { return data_; }

    std::vector<T> column(std::size_t c) const {
        std::vector<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    void set_column(std::size_t c, const std::vector<T>& v) {
        if (v.size() != rows_) throw invalid_input("column length mismatch");
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix b(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
        return b;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x = x * s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw invalid_input("matrix product dimension mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t c = 0; c < b.cols_; ++c) {
                bool started = false;
                T acc;
                for (std::size_t k = 0; k < a.cols_; ++k) {
                    const T& x = a(r, k);
                    if (is_zero(x)) continue;
                    const T& y = b(k, c);
                    if (is_zero(y)) continue;
                    if (started) {
                        acc += x * y;
                    } else {
                        acc = x * y;
                        started = true;
                    }
                }
                if (started) out(r, c) = std::move(acc);
                else if (a.cols_ > 0) out(r, c) = a(r, 0) - a(r, 0);
            }
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw invalid_input("matrix dimension mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using CyclotomicMatrix = Matrix<Cyclotomic>;

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
    Matrix<T> t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
    return t;
}

// Conjugate transpose.
template <class T>
Matrix<T> adjoint(const Matrix<T>& a) {
    Matrix<T> t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = conj(a(r, c));
    return t;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw invalid_input("hstack row mismatch");
    Matrix<T> out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
    }
    return out;
}

template <class T>
bool is_identity(const Matrix<T>& a) {
    if (!a.square()) return false;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a(r, c) != T(r == c ? 1 : 0)) return false;
    return true;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& a) {
    for (const auto& x : a.data())
        if (!is_zero(x)) return false;
    return true;
}

// Returns true and sets `lambda` when a = lambda * I.
template <class T>
bool is_scalar_matrix(const Matrix<T>& a, T* lambda = nullptr) {
    if (!a.square() || a.rows() == 0) return false;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r == c && a(r, c) != a(0, 0)) return false;
            if (r != c && !is_zero(a(r, c))) return false;
        }
    if (lambda) *lambda = a(0, 0);
    return true;
}

inline CyclotomicMatrix to_cyclotomic(const RationalMatrix& a, int level = 1) {
    CyclotomicMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = Cyclotomic::rational(level, a(r, c));
    return out;
}

// Lifts every entry to level L so that hashing and equality are structural.
inline CyclotomicMatrix normalize_level(const CyclotomicMatrix& a, int L) {
    CyclotomicMatrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c).lift(L);
    return out;
}
inline RationalMatrix normalize_level(const RationalMatrix& a, int) { return a; }

inline std::size_t hash_scalar(const Rational& q) { return hash_rational(q); }
inline std::size_t hash_scalar(const Cyclotomic& x) { return x.hash(); }

template <class T>
std::size_t hash_matrix(const Matrix<T>& a) {
    std::size_t h = a.rows() * 1000003 + a.cols();
    for (const auto& x : a.data()) hash_combine(h, hash_scalar(x));
    return h;
}

namespace detail {

inline Rational scalar_inverse(const Rational& q) {
    if (q == 0) throw invalid_input("division by zero");
    return 1 / q;
}
inline Cyclotomic scalar_inverse(const Cyclotomic& x) { return x.inverse(); }

// Row reduction in place; returns pivot columns.  Used for rank, kernels and inverses.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && is_zero(a(p, col))) ++p;
        if (p == a.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
        T inv = scalar_inverse(a(row, col));
        for (std::size_t c = col; c < a.cols(); ++c)
            if (!is_zero(a(row, c))) a(row, c) = a(row, c) * inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || is_zero(a(r, col))) continue;
            T f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c)
                if (!is_zero(a(row, c))) a(r, c) -= f * a(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

template <class T>
std::size_t rank(Matrix<T> a) {
    return detail::rref(a).size();
}

// Basis of the right kernel, returned as the columns of a cols x (cols - rank) matrix.
template <class T>
Matrix<T> kernel_basis(Matrix<T> a) {
    auto pivots = detail::rref(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    T zero = a.rows() && a.cols() ? a(0, 0) - a(0, 0) : T(0);
    Matrix<T> basis(n, free_cols.size(), zero);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t f = free_cols[k];
        basis(f, k) = zero + T(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (!is_zero(a(i, f))) basis(pivots[i], k) = -a(i, f);
    }
    return basis;
}

template <class T>
T det(Matrix<T> a) {
    if (!a.square()) throw invalid_input("det of non-square matrix");
    const std::size_t n = a.rows();
    T result(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && is_zero(a(p, col))) ++p;
        if (p == n) return T(0);
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(p, c), a(col, c));
            result = -result;
        }
        result = result * a(col, col);
        T inv = detail::scalar_inverse(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (is_zero(a(r, col))) continue;
            T f = a(r, col) * inv;
            for (std::size_t c = col; c < n; ++c)
                if (!is_zero(a(col, c))) a(r, c) -= f * a(col, c);
        }
    }
    return result;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
    if (!a.square()) throw invalid_input("inverse of non-square matrix");
    const std::size_t n = a.rows();
    T zero = n ? a(0, 0) - a(0, 0) : T(0);
    Matrix<T> aug = hstack(a, Matrix<T>::identity(n, zero + T(1)));
    auto pivots = detail::rref(aug);
    if (pivots.size() < n || (n && pivots[n - 1] != n - 1)) throw invalid_input("inverse of singular matrix");
    return aug.block(0, n, n, n);
}

template <class T>
Matrix<T> power(const Matrix<T>& a, long long e) {
    if (!a.square()) throw invalid_input("power of non-square matrix");
    if (e < 0) return power(inverse(a), -e);
    T one = a.rows() ? a(0, 0) - a(0, 0) + T(1) : T(1);
    Matrix<T> result = Matrix<T>::identity(a.rows(), one), base = a;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

// Standard symplectic form [[0, I], [-I, 0]] on Z^{2g}.
inline RationalMatrix symplectic_form(int g) {
    RationalMatrix J(2 * g, 2 * g);
    for (int i = 0; i < g; ++i) {
        J(i, g + i) = 1;
        J(g + i, i) = -1;
    }
    return J;
}

template <class T>
std::string to_string(const Matrix<T>& a) {
    std::string s = "[";
    for (std::size_t r = 0; r < a.rows(); ++r) {
        s += r ? ", [" : "[";
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (c) s += ", ";
            if constexpr (std::is_same_v<T, Rational>) s += a(r, c).get_str();
            else s += a(r, c).to_string();
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace omsig
