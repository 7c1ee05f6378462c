#pragma once

#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "matrix.hpp"
#include "polymatrix.hpp"
#include "sharp.hpp"

namespace ssekit {

/// The counterexample data over Q[t^2, t^3, z, z^-1]: a 2x2 matrix M over R[s]
/// whose pencil class is a nontrivial NK_1 element (not machine-checkable
/// here; recorded as an annotation only), its 10x10 companion N, and the 9x9
/// N' obtained by deleting the last row and column of N. N is rebuilt from M
/// through the companion construction and compared against the transcription,
/// so the two encodings guard each other.
struct BadRingFixture {
    PolyMatrix<Laurent> M{2};
    Matrix<Laurent> N{10, 10};
    Matrix<Laurent> Nprime{9, 9};
};

namespace detail {

inline Laurent one_minus_zinv() {  // 1 - z^-1
    return Laurent(1) - Laurent::term(Rational(1), 0, -1);
}
inline Laurent zinv_minus_one() { return -one_minus_zinv(); }
inline Laurent one_minus_z() {  // 1 - z
    return Laurent(1) - Laurent::term(Rational(1), 0, 1);
}
inline Laurent z_minus_one() { return -one_minus_z(); }
inline Laurent tpow(int k) { return Laurent::term(Rational(1), k, 0); }

}  // namespace detail

inline BadRingFixture badring_fixture() {
    using detail::one_minus_z;
    using detail::one_minus_zinv;
    using detail::tpow;
    using detail::z_minus_one;
    using detail::zinv_minus_one;

    // M = sum_{i=1}^5 s^i M_i, from
    //   M(1,1) = (1 - z^-1) s^4 t^4
    //   M(1,2) = (1 - z)(s^2 t^2 - s^3 t^3)
    //   M(2,1) = (z^-1 - 1) s^2 t^2 (1 + st + s^2 t^2 + s^3 t^3)
    //   M(2,2) = (1 - z) s^4 t^4
    auto zero2 = Matrix<Laurent>::zero(2, 2);
    Matrix<Laurent> m2 = zero2, m3 = zero2, m4 = zero2, m5 = zero2;
    m2.at(0, 1) = one_minus_z() * tpow(2);
    m2.at(1, 0) = zinv_minus_one() * tpow(2);
    m3.at(0, 1) = z_minus_one() * tpow(3);
    m3.at(1, 0) = zinv_minus_one() * tpow(3);
    m4.at(0, 0) = one_minus_zinv() * tpow(4);
    m4.at(1, 0) = zinv_minus_one() * tpow(4);
    m4.at(1, 1) = one_minus_z() * tpow(4);
    m5.at(1, 0) = zinv_minus_one() * tpow(5);

    BadRingFixture f;
    f.M = PolyMatrix<Laurent>::from_coeffs(2, {zero2, zero2, m2, m3, m4, m5});

    // The 10x10 companion, written out entry by entry.
    Matrix<Laurent> n(10, 10);
    n.at(0, 3) = one_minus_z() * tpow(2);
    n.at(0, 5) = -(one_minus_z() * tpow(3));
    n.at(0, 6) = one_minus_zinv() * tpow(4);
    n.at(1, 2) = zinv_minus_one() * tpow(2);
    n.at(1, 4) = zinv_minus_one() * tpow(3);
    n.at(1, 6) = zinv_minus_one() * tpow(4);
    n.at(1, 7) = one_minus_z() * tpow(4);
    n.at(1, 8) = zinv_minus_one() * tpow(5);
    for (std::size_t r = 2; r < 10; ++r) n.at(r, r - 2) = Laurent(1);

    if (sharp_of(f.M, 5) != n)
        fail(errc::internal, "companion of M does not match the transcribed N");
    f.N = std::move(n);
    f.Nprime = f.N.block(0, 0, 9, 9);
    return f;
}

}  // namespace ssekit
