#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace ssekit {

/// Dense matrix over an exact ring R. R needs value semantics, R(long),
/// +, -, *, ==, and the free functions is_zero / exact_div / div_by_int.
/// Everything here is exact; there is no floating point anywhere.
template <class R>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, R(0)) {
        if (rows == 0 || cols == 0) fail(errc::shape, "matrix dimensions must be positive");
    }
    Matrix(std::size_t rows, std::size_t cols, std::vector<R> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (rows == 0 || cols == 0) fail(errc::shape, "matrix dimensions must be positive");
        if (e_.size() != rows * cols) fail(errc::shape, "entry count does not match dimensions");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = R(1);
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    R& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const R& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero_matrix() const {
        for (const auto& x : e_)
            if (!is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
        return r;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "add");
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "subtract");
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            fail(errc::shape, "product shape mismatch: " + a.shape_str() + " * " + b.shape_str());
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const R& aik = a.at(i, k);
                if (is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }
    friend Matrix operator*(const R& c, const Matrix& m) {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.e_.size(); ++i) r.e_[i] = c * m.e_[i];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    R trace() const {
        require_square("trace");
        R t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    Matrix pow(std::size_t e) const {
        require_square("power");
        Matrix acc = identity(rows_);
        Matrix base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return acc;
    }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        if (i0 + r > rows_ || j0 + c > cols_) fail(errc::shape, "block out of range");
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
        return m;
    }

    void set_block(std::size_t i0, std::size_t j0, const Matrix& m) {
        if (i0 + m.rows_ > rows_ || j0 + m.cols_ > cols_) fail(errc::shape, "block out of range");
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) at(i0 + i, j0 + j) = m.at(i, j);
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            fail(errc::shape, std::string(op) + " shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
    }
    void require_square(const char* op) const {
        if (!is_square()) fail(errc::shape, std::string(op) + " requires a square matrix");
    }

    std::size_t rows_, cols_;
    std::vector<R> e_;
};

template <class R>
Matrix<R> hstack(const Matrix<R>& a, const Matrix<R>& b) {
    if (a.rows() != b.rows()) fail(errc::shape, "hstack row mismatch");
    Matrix<R> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class R>
Matrix<R> vstack(const Matrix<R>& a, const Matrix<R>& b) {
    if (a.cols() != b.cols()) fail(errc::shape, "vstack column mismatch");
    Matrix<R> m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

/// Direct sum diag(a, b).
template <class R>
Matrix<R> dsum(const Matrix<R>& a, const Matrix<R>& b) {
    Matrix<R> m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

/// Fraction-free Bareiss determinant. Works over any integral domain with
/// exact_div; intermediate divisions are exact by construction.
template <class R>
R det_exact(const Matrix<R>& m) {
    if (!m.is_square()) fail(errc::shape, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    Matrix<R> w = m;
    R prev(1);
    bool neg = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(w.at(k, k))) {
            std::size_t r = k + 1;
            while (r < n && is_zero(w.at(r, k))) ++r;
            if (r == n) return R(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(r, j));
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                w.at(i, j) = exact_div(w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j), prev);
            w.at(i, k) = R(0);
        }
        prev = w.at(k, k);
    }
    R d = w.at(n - 1, n - 1);
    return neg ? -d : d;
}

/// Monic characteristic polynomial, ascending coefficients (c[n] = 1), via the
/// Faddeev-LeVerrier recurrence. Exact over any ring containing Q.
template <class R>
std::vector<R> char_poly(const Matrix<R>& m) {
    if (!m.is_square()) fail(errc::shape, "characteristic polynomial of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<R> c(n + 1, R(0));
    c[n] = R(1);
    Matrix<R> acc = Matrix<R>::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix<R> am = m * acc;
        c[n - k] = div_by_int(-am.trace(), static_cast<long>(k));
        if (k < n) {
            acc = am;
            for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += c[n - k];
        }
    }
    return c;
}

/// Least k with m^k = 0, or (false, 0). k never exceeds the size.
template <class R>
std::pair<bool, std::size_t> is_nilpotent(const Matrix<R>& m) {
    if (!m.is_square()) fail(errc::shape, "nilpotency of non-square matrix");
    Matrix<R> p = m;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        if (p.is_zero_matrix()) return {true, k};
        if (k < m.rows()) p = p * m;
    }
    return {false, 0};
}

// --- field-only operations (Q) ---

/// Gauss-Jordan inverse over Q. Throws not-a-unit when singular.
inline Matrix<Rational> inverse(const Matrix<Rational>& m) {
    if (!m.is_square()) fail(errc::shape, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix<Rational> w = m, inv = Matrix<Rational>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && w.at(p, k).is_zero()) ++p;
        if (p == n) fail(errc::not_a_unit, "matrix is singular over Q");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w.at(k, j), w.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        const Rational piv = w.at(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            w.at(k, j) /= piv;
            inv.at(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || w.at(i, k).is_zero()) continue;
            const Rational f = w.at(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                w.at(i, j) -= f * w.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

inline Matrix<Rational> entrywise_abs(const Matrix<Rational>& m) {
    Matrix<Rational> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j).abs();
    return r;
}

template <class R>
Matrix<R> entrywise_abs(const Matrix<R>&) {
    fail(errc::unsupported_ring, "entrywise absolute value needs an ordered ring");
}

inline Rational sup_norm(const Matrix<Rational>& m) {
    Rational best(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational a = m.at(i, j).abs();
            if (a > best) best = a;
        }
    return best;
}

template <class R>
Rational sup_norm(const Matrix<R>&) {
    fail(errc::unsupported_ring, "sup norm needs an ordered ring");
}

inline bool is_nonnegative(const Matrix<Rational>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j).sign() < 0) return false;
    return true;
}

namespace detail {

// Smallest grid point u = m*step with u^k >= q (q >= 0), by binary search on m.
inline Rational kth_root_upper(const Rational& q, std::size_t k, const Rational& step) {
    if (q.sign() <= 0) return Rational(0);
    unsigned long hi = 1;
    while ((Rational(static_cast<long>(hi)) * step).pow(static_cast<long>(k)) < q) hi *= 2;
    unsigned long lo = hi / 2;
    while (lo + 1 < hi) {
        unsigned long mid = lo + (hi - lo) / 2;
        if ((Rational(static_cast<long>(mid)) * step).pow(static_cast<long>(k)) >= q)
            hi = mid;
        else
            lo = mid;
    }
    return Rational(static_cast<long>(hi)) * step;
}

// Largest grid point u = m*step with u^k <= q.
inline Rational kth_root_lower(const Rational& q, std::size_t k, const Rational& step) {
    if (q.sign() <= 0) return Rational(0);
    unsigned long hi = 1;
    while ((Rational(static_cast<long>(hi)) * step).pow(static_cast<long>(k)) <= q) hi *= 2;
    unsigned long lo = hi / 2;
    while (lo + 1 < hi) {
        unsigned long mid = lo + (hi - lo) / 2;
        if ((Rational(static_cast<long>(mid)) * step).pow(static_cast<long>(k)) <= q)
            lo = mid;
        else
            hi = mid;
    }
    return Rational(static_cast<long>(lo)) * step;
}

}  // namespace detail

/// Certified upper bound u on the spectral radius of a nonnegative matrix with
/// u - lambda <= tol, by exact power iteration: lambda^k is bracketed between
/// row-sum / diagonal bounds of m^k and the k-th roots are taken on a rational
/// grid. No floating point.
inline Rational spectral_radius_upper(const Matrix<Rational>& m, const Rational& tol) {
    if (tol.sign() <= 0) fail(errc::invalid_tolerance, "tolerance must be positive");
    if (!m.is_square()) fail(errc::shape, "spectral radius of non-square matrix");
    if (!is_nonnegative(m)) fail(errc::precondition, "spectral radius bound needs a nonnegative matrix");
    if (m.is_zero_matrix()) return Rational(0);

    const std::size_t n = m.rows();
    const Rational step = tol / Rational(8);
    Matrix<Rational> p = m;
    std::size_t k = 1;
    Rational upper_best;
    Rational lower_best(0);
    bool have_upper = false;
    for (int iter = 0; iter < 16; ++iter) {
        Rational max_row(0), min_row, max_diag(0);
        for (std::size_t i = 0; i < n; ++i) {
            Rational s(0);
            for (std::size_t j = 0; j < n; ++j) s += p.at(i, j);
            if (s > max_row) max_row = s;
            if (i == 0 || s < min_row) min_row = s;
            if (p.at(i, i) > max_diag) max_diag = p.at(i, i);
        }
        Rational u = detail::kth_root_upper(max_row, k, step);
        if (!have_upper || u < upper_best) {
            upper_best = u;
            have_upper = true;
        }
        Rational l = detail::kth_root_lower(max_diag > min_row ? max_diag : min_row, k, step);
        if (l > lower_best) lower_best = l;
        if (upper_best - lower_best <= tol) return upper_best;
        p = p * p;
        k *= 2;
    }
    return upper_best;  // still a valid upper bound, possibly looser than tol
}

}  // namespace ssekit
