#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "polymatrix.hpp"

namespace ssekit {

/// One elementary move on a bordered presentation I - A over Q[t].
/// row_add: row i += p(t) * row j. col_add: column i += p(t) * column j.
/// stabilize appends an identity row/column (the finite window onto the
/// ambient infinite identity grows by one); destabilize removes a final
/// row/column that must equal the identity's.
enum class ElOpKind { row_add, col_add, stabilize, destabilize };

struct ElOp {
    ElOpKind kind = ElOpKind::stabilize;
    std::size_t i = 0, j = 0;  // add targets, 0-based
    QPoly p;                   // add multiplier

    static ElOp row_add(std::size_t i, std::size_t j, QPoly p) {
        return ElOp{ElOpKind::row_add, i, j, std::move(p)};
    }
    static ElOp col_add(std::size_t i, std::size_t j, QPoly p) {
        return ElOp{ElOpKind::col_add, i, j, std::move(p)};
    }
    static ElOp stabilize() { return ElOp{ElOpKind::stabilize, 0, 0, QPoly()}; }
    static ElOp destabilize() { return ElOp{ElOpKind::destabilize, 0, 0, QPoly()}; }
};

/// Replayable certificate that I - initial and I - final are El(Q[t])
/// equivalent. The log IS the certificate: apply_oplog replays it and
/// det_certificate checks the determinant invariant without replaying.
struct ElOpLog {
    PolyMatrix<Rational> initial{1};
    std::vector<ElOp> ops;
    PolyMatrix<Rational> final{1};
};

struct ReplayResult {
    PolyMatrix<Rational> result{1};  // the B with I - B = replayed matrix
    bool matches = false;            // result == log.final
};

namespace detail {

inline Matrix<QPoly> i_minus(const PolyMatrix<Rational>& a) {
    return Matrix<QPoly>::identity(a.size()) - a.to_poly_entries();
}

}  // namespace detail

/// Replays the ops on I - initial. Throws invalid-op on out-of-range indices,
/// i == j adds, or a destabilize whose border row/column is not identity.
inline ReplayResult apply_oplog(const ElOpLog& log) {
    Matrix<QPoly> w = detail::i_minus(log.initial);
    for (const ElOp& op : log.ops) {
        const std::size_t n = w.rows();
        switch (op.kind) {
            case ElOpKind::row_add: {
                if (op.i >= n || op.j >= n || op.i == op.j)
                    fail(errc::invalid_op, "row_add indices out of range");
                for (std::size_t c = 0; c < n; ++c)
                    w.at(op.i, c) += op.p * w.at(op.j, c);
                break;
            }
            case ElOpKind::col_add: {
                if (op.i >= n || op.j >= n || op.i == op.j)
                    fail(errc::invalid_op, "col_add indices out of range");
                for (std::size_t r = 0; r < n; ++r)
                    w.at(r, op.i) += op.p * w.at(r, op.j);
                break;
            }
            case ElOpKind::stabilize: {
                Matrix<QPoly> grown(n + 1, n + 1);
                grown.set_block(0, 0, w);
                grown.at(n, n) = QPoly(1);
                w = std::move(grown);
                break;
            }
            case ElOpKind::destabilize: {
                if (n < 2) fail(errc::invalid_op, "cannot destabilize a 1x1 matrix");
                const QPoly one(1);
                if (w.at(n - 1, n - 1) != one)
                    fail(errc::invalid_op, "destabilize: corner entry is not 1");
                for (std::size_t k = 0; k + 1 < n; ++k)
                    if (!w.at(n - 1, k).is_zero_poly() || !w.at(k, n - 1).is_zero_poly())
                        fail(errc::invalid_op, "destabilize: border row/column is not identity");
                w = w.block(0, 0, n - 1, n - 1);
                break;
            }
        }
    }
    Matrix<QPoly> b = Matrix<QPoly>::identity(w.rows()) - w;
    ReplayResult res;
    res.result = PolyMatrix<Rational>::from_poly_entries(b);
    res.matches = (res.result.size() == log.final.size()) && res.result == log.final;
    return res;
}

/// Every valid log preserves det(I - A): basic row/column adds have
/// determinant 1 and stabilization adds a diagonal 1. This check is
/// independent of replay and serves as a second certificate.
inline bool det_certificate(const ElOpLog& log) {
    return det_i_minus(log.initial) == det_i_minus(log.final);
}

}  // namespace ssekit
