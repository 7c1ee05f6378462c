#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace ssekit {

/// Square matrix over R[s], stored as a sequence of coefficient matrices:
/// coeff(i) is the matrix multiplying s^i. Trailing zero coefficients are
/// trimmed, so the stored length is degree-aware; the degree of the zero
/// matrix is 0 by convention.
template <class R>
class PolyMatrix {
public:
    explicit PolyMatrix(std::size_t size) : size_(size) {
        if (size == 0) fail(errc::shape, "polynomial matrix size must be positive");
    }

    static PolyMatrix from_coeffs(std::size_t size, std::vector<Matrix<R>> coeffs) {
        PolyMatrix p(size);
        for (const auto& m : coeffs)
            if (m.rows() != size || m.cols() != size)
                fail(errc::shape, "coefficient matrix size mismatch");
        p.coeffs_ = std::move(coeffs);
        p.trim();
        return p;
    }

    std::size_t size() const { return size_; }
    bool is_zero_matrix() const { return coeffs_.empty(); }

    /// Number of stored coefficients (degree + 1 for nonzero matrices).
    std::size_t coeff_count() const { return coeffs_.size(); }

    Matrix<R> coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Matrix<R>::zero(size_, size_);
    }

    /// Maximum entry degree; 0 for the zero matrix.
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

    /// Least d with a nonzero coefficient matrix at degree d. Returns
    /// coeff_count() (= 0) for the zero matrix, so `low_degree() >= k` reads as
    /// "lies in s^k R[s]" only for nonzero matrices; callers special-case zero.
    std::size_t low_degree() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero_matrix()) return i;
        return coeffs_.size();
    }

    /// True iff every entry lies in s^k R[s] (zero matrix qualifies).
    bool in_degree_ideal(std::size_t k) const {
        for (std::size_t i = 0; i < k && i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero_matrix()) return false;
        return true;
    }

    Poly<R> entry(std::size_t i, std::size_t j) const {
        std::vector<R> c;
        c.reserve(coeffs_.size());
        for (const auto& m : coeffs_) c.push_back(m.at(i, j));
        return Poly<R>::from_coeffs(std::move(c));
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.size_ == b.size_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.size_ != b.size_) fail(errc::shape, "polynomial matrix add size mismatch");
        std::vector<Matrix<R>> c;
        const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        c.reserve(n);
        for (std::size_t i = 0; i < n; ++i) c.push_back(a.coeff(i) + b.coeff(i));
        return from_coeffs(a.size_, std::move(c));
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.size_ != b.size_) fail(errc::shape, "polynomial matrix product size mismatch");
        if (a.is_zero_matrix() || b.is_zero_matrix()) return PolyMatrix(a.size_);
        std::vector<Matrix<R>> c(a.coeffs_.size() + b.coeffs_.size() - 1,
                                 Matrix<R>::zero(a.size_, a.size_));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
        return from_coeffs(a.size_, std::move(c));
    }

    /// Multiplication by s^k.
    PolyMatrix shifted(std::size_t k) const {
        if (coeffs_.empty()) return *this;
        std::vector<Matrix<R>> c(k, Matrix<R>::zero(size_, size_));
        c.insert(c.end(), coeffs_.begin(), coeffs_.end());
        return from_coeffs(size_, std::move(c));
    }

    Matrix<Poly<R>> to_poly_entries() const {
        Matrix<Poly<R>> m(size_, size_);
        for (std::size_t i = 0; i < size_; ++i)
            for (std::size_t j = 0; j < size_; ++j) m.at(i, j) = entry(i, j);
        return m;
    }

    static PolyMatrix from_poly_entries(const Matrix<Poly<R>>& m) {
        if (!m.is_square()) fail(errc::shape, "polynomial matrix must be square");
        std::size_t deg = 0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m.at(i, j).degree() > static_cast<int>(deg))
                    deg = static_cast<std::size_t>(m.at(i, j).degree());
        std::vector<Matrix<R>> c(deg + 1, Matrix<R>::zero(m.rows(), m.rows()));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                for (std::size_t d = 0; d < m.at(i, j).coeffs().size(); ++d)
                    c[d].at(i, j) = m.at(i, j).coeffs()[d];
        return from_coeffs(m.rows(), std::move(c));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero_matrix()) coeffs_.pop_back();
    }

    std::size_t size_;
    std::vector<Matrix<R>> coeffs_;
};

/// ||M|| = max over strictly positive degrees of the entrywise absolute values
/// of the coefficient matrices. Degree-0 coefficients never contribute.
inline Rational poly_norm(const PolyMatrix<Rational>& m) {
    Rational best(0);
    for (std::size_t d = 1; d < m.coeff_count(); ++d) {
        Rational s = sup_norm(m.coeff(d));
        if (s > best) best = s;
    }
    return best;
}

template <class R>
Rational poly_norm(const PolyMatrix<R>&) {
    fail(errc::unsupported_ring, "polynomial matrix norm needs an ordered ring");
}

/// det(I - M) as a polynomial in s, computed fraction-free over R[s].
template <class R>
Poly<R> det_i_minus(const PolyMatrix<R>& m) {
    Matrix<Poly<R>> w = m.to_poly_entries();
    Matrix<Poly<R>> id = Matrix<Poly<R>>::identity(m.size());
    return det_exact(id - w);
}

}  // namespace ssekit
