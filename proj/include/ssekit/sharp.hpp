#pragma once

#include <cstddef>

#include "errors.hpp"
#include "matrix.hpp"
#include "polymatrix.hpp"

namespace ssekit {

/// The block companion of a polynomial matrix A = sum_{i>=1} s^i A_i with
/// n x n coefficients: first block row A_1 .. A_k, identity blocks on the
/// subdiagonal, zero elsewhere. k may exceed the degree (zero blocks pad on
/// the right); with k = 1 the result is A_1 itself.
template <class R>
Matrix<R> sharp_of(const PolyMatrix<R>& a, std::size_t k_blocks = 0) {
    if (!a.coeff(0).is_zero_matrix())
        fail(errc::precondition, "companion requires a matrix over s*R[s] (zero constant term)");
    const std::size_t n = a.size();
    std::size_t k = k_blocks;
    if (k == 0) k = std::max<std::size_t>(a.degree(), 1);
    if (k < a.degree())
        fail(errc::precondition, "block count smaller than the matrix degree");
    Matrix<R> m(n * k, n * k);
    for (std::size_t b = 0; b < k; ++b) m.set_block(0, b * n, a.coeff(b + 1));
    for (std::size_t b = 0; b + 1 < k; ++b)
        m.set_block((b + 1) * n, b * n, Matrix<R>::identity(n));
    return m;
}

/// The inverse direction of the companion correspondence: A over R maps to the
/// pencil I - tA; we store its finite part tA.
template <class R>
PolyMatrix<R> embed_as_pencil(const Matrix<R>& a) {
    if (!a.is_square()) fail(errc::shape, "pencil embedding requires a square matrix");
    return PolyMatrix<R>::from_coeffs(a.rows(), {Matrix<R>::zero(a.rows(), a.rows()), a});
}

}  // namespace ssekit
