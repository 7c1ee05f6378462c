#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "elops.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "polymatrix.hpp"
#include "sharp.hpp"

namespace ssekit {

/// Norm of one intermediate stage against its expected chain bound
/// (2||A||, 2n||A||, 4n||A||, 4n^2||A||, 4n^3||A||). Recorded, not enforced:
/// if a run ever violated a stage bound while the final bounds held, the
/// report would show it instead of hiding it.
struct StageNorm {
    std::string stage;
    Rational norm;
    Rational limit;
    bool ok = false;
};

/// Outcome of one degree-clearing pass: input over t^k Q[t], output over
/// t^{k+1} Q[t], the replayable op log, and the certified bounds
/// degree(B) <= degree(A) + 3k and ||B|| <= 4 n^3 ||A||.
struct ClearingStepReport {
    PolyMatrix<Rational> input{1};
    PolyMatrix<Rational> output{1};
    std::size_t k = 0;
    ElOpLog log;

    std::size_t degree_in = 0, degree_out = 0, degree_limit = 0;
    Rational norm_in, norm_out, norm_limit;
    bool degree_bound_ok = false, norm_bound_ok = false;
    std::vector<StageNorm> stage_norms;
};

namespace detail {

inline Rational tk_coeff(const QPoly& p, std::size_t k) { return p.coeff(k); }

// Norm precondition of the clearing lemma: ||A|| <= 1 / (4 n^2).
inline Rational lemma_norm_cap(std::size_t n) {
    return Rational(1) / Rational(4 * static_cast<long>(n) * static_cast<long>(n));
}

}  // namespace detail

/// One pass of the five-step clearing algorithm. Input must lie in t^k Q[t]
/// with vanishing trace of the degree-k coefficient and ||A|| <= 1/(4n^2).
/// The emitted log replays I - A to I - B through one stabilization; the
/// border is cleared and destabilized after step three, then the remaining
/// degree-k terms are removed above the diagonal by row adds and below it by
/// column adds.
inline ClearingStepReport clear_degree_step(const PolyMatrix<Rational>& a, std::size_t k) {
    if (k == 0) fail(errc::precondition, "clearing step needs k >= 1");
    const std::size_t n = a.size();
    if (!a.in_degree_ideal(k))
        fail(errc::precondition, "input has nonzero coefficients below degree k");
    const Rational diag_sum = a.coeff(k).trace();
    if (!diag_sum.is_zero())
        fail(errc::precondition,
             "degree-k diagonal sum must vanish, got " + diag_sum.str());
    const Rational norm_in = poly_norm(a);
    const Rational cap = detail::lemma_norm_cap(n);
    if (norm_in > cap)
        fail(errc::precondition,
             "norm precondition violated: ||A|| = " + norm_in.str() + " > " + cap.str());

    ClearingStepReport rep;
    rep.input = a;
    rep.k = k;
    rep.log.initial = a;
    rep.degree_in = a.degree();
    rep.norm_in = norm_in;

    if (a.is_zero_matrix()) {
        // Nothing to clear; the empty log certifies I - 0 = I - 0.
        rep.output = a;
        rep.log.final = a;
        rep.degree_out = 0;
        rep.degree_limit = rep.degree_in + 3 * k;
        rep.norm_out = Rational(0);
        rep.norm_limit = Rational(4 * static_cast<long>(n * n * n)) * norm_in;
        rep.degree_bound_ok = rep.norm_bound_ok = true;
        return rep;
    }

    auto& ops = rep.log.ops;
    Matrix<QPoly> w = detail::i_minus(a);
    const auto apply_row = [&](std::size_t i, std::size_t j, const QPoly& p) {
        if (p.is_zero_poly()) return;
        ops.push_back(ElOp::row_add(i, j, p));
        for (std::size_t c = 0; c < w.cols(); ++c) w.at(i, c) += p * w.at(j, c);
    };
    const auto apply_col = [&](std::size_t i, std::size_t j, const QPoly& p) {
        if (p.is_zero_poly()) return;
        ops.push_back(ElOp::col_add(i, j, p));
        for (std::size_t r = 0; r < w.rows(); ++r) w.at(r, i) += p * w.at(r, j);
    };
    const auto record_stage = [&](const char* stage, long factor) {
        const std::size_t m = w.rows();
        const Matrix<QPoly> diff = Matrix<QPoly>::identity(m) - w;
        const Rational norm = poly_norm(PolyMatrix<Rational>::from_poly_entries(diff));
        const Rational limit = Rational(factor) * norm_in;
        rep.stage_norms.push_back(StageNorm{stage, norm, limit, norm <= limit});
    };

    // Stabilize: border index n.
    ops.push_back(ElOp::stabilize());
    {
        Matrix<QPoly> grown(n + 1, n + 1);
        grown.set_block(0, 0, w);
        grown.at(n, n) = QPoly(1);
        w = std::move(grown);
    }
    // Seed the border column with the degree-k diagonal coefficients.
    for (std::size_t i = 0; i < n; ++i)
        apply_row(i, n, QPoly::term(a.coeff(k).at(i, i), k));
    // (1) fold the border column into every column: clears the diagonal
    //     degree-k terms, puts 1s in the border row.
    for (std::size_t j = 0; j < n; ++j) apply_col(j, n, QPoly(1));
    // (2) subtract all rows from the border row; the trace hypothesis makes
    //     the border corner stay 1 and the border row constants cancel.
    for (std::size_t i = 0; i < n; ++i) apply_row(n, i, QPoly(-1));
    // (3) clear the border column again.
    for (std::size_t i = 0; i < n; ++i)
        apply_row(i, n, QPoly::term(-a.coeff(k).at(i, i), k));
    // Clear the leftover border row x and destabilize.
    for (std::size_t j = 0; j < n; ++j) apply_col(j, n, -w.at(n, j));
    {
        ops.push_back(ElOp::destabilize());
        for (std::size_t c = 0; c + 1 < w.cols(); ++c)
            if (!w.at(n, c).is_zero_poly() || !w.at(c, n).is_zero_poly())
                fail(errc::internal, "border not cleared before destabilize");
        if (w.at(n, n) != QPoly(1)) fail(errc::internal, "border corner is not 1");
        w = w.block(0, 0, n, n);
    }
    // (4) clear degree-k terms above the diagonal with row adds. The entry of
    //     A5 at (i,j) is -w(i,j), so the multiplier -[t^k]w(i,j) * t^k kills
    //     the degree-k coefficient and only adds terms of degree >= 2k.
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            apply_row(i, j, QPoly::term(-detail::tk_coeff(w.at(i, j), k), k));
    // (5) clear degree-k terms below the diagonal with column adds, same
    //     multiplier pattern.
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            apply_col(i, j, QPoly::term(-detail::tk_coeff(w.at(j, i), k), k));

    PolyMatrix<Rational> b =
        PolyMatrix<Rational>::from_poly_entries(Matrix<QPoly>::identity(n) - w);
    if (!b.in_degree_ideal(k + 1))
        fail(errc::internal, "clearing left a coefficient of degree <= k");
    rep.output = b;
    rep.log.final = b;
    rep.degree_out = b.degree();
    rep.degree_limit = rep.degree_in + 3 * k;
    rep.norm_out = poly_norm(b);
    rep.norm_limit = Rational(4 * static_cast<long>(n * n * n)) * norm_in;
    rep.degree_bound_ok = rep.degree_out <= rep.degree_limit;
    rep.norm_bound_ok = rep.norm_out <= rep.norm_limit;
    return rep;
}

/// Result of the full recursion: M = companion of B_K, J x J with
/// J = n (1 + 3K(K+1)/2), and trace(|M|^k) = 0 for 1 <= k <= K.
struct ClearedResult {
    Matrix<Rational> M{1, 1};
    std::size_t J = 0;
    std::size_t K = 0;
    std::size_t n = 0;
    std::vector<ClearingStepReport> steps;
    PolyMatrix<Rational> B_K{1};
};

inline std::size_t prop_block_count(std::size_t K) { return 1 + 3 * K * (K + 1) / 2; }

/// Minimal input sup-norm that keeps every recursion step inside the lemma's
/// norm precondition: delta = (1/(4n^2)) * (4n^3)^-K.
inline Rational prop_norm_budget(std::size_t n, std::size_t K) {
    const Rational shrink_per_step(4 * static_cast<long>(n * n * n));
    Rational budget = detail::lemma_norm_cap(n);
    for (std::size_t i = 0; i < K; ++i) budget /= shrink_per_step;
    return budget;
}

/// Runs the recursion B_0 = tN, B_k = cleared B_{k-1}, then assembles
/// M = (B_K)^companion padded to d = 1 + 3K(K+1)/2 blocks. The trace
/// preconditions hold automatically because N is nilpotent; the norm
/// precondition is checked at every step and reported as needs-shrinking
/// when violated.
inline ClearedResult clear_traces(const Matrix<Rational>& n_mat, std::size_t K) {
    if (K == 0) fail(errc::precondition, "K must be positive");
    if (!n_mat.is_square()) fail(errc::shape, "input must be square");
    if (!is_nilpotent(n_mat).first) fail(errc::precondition, "input matrix is not nilpotent");
    const std::size_t n = n_mat.rows();

    ClearedResult res;
    res.K = K;
    res.n = n;

    PolyMatrix<Rational> b = embed_as_pencil(n_mat);
    for (std::size_t k = 1; k <= K; ++k) {
        const Rational norm = poly_norm(b);
        const Rational cap = detail::lemma_norm_cap(n);
        if (norm > cap)
            fail(errc::needs_shrinking, "step " + std::to_string(k) + " needs ||B|| <= " +
                                            cap.str() + ", have " + norm.str() +
                                            "; shrink input below " +
                                            prop_norm_budget(n, K).str());
        if (!b.coeff(k).trace().is_zero())
            fail(errc::internal, "nilpotency should force a zero degree-k diagonal sum");
        ClearingStepReport rep = clear_degree_step(b, k);
        if (!rep.degree_bound_ok || !rep.norm_bound_ok)
            fail(errc::internal, "clearing bound violated at step " + std::to_string(k));
        b = rep.output;
        res.steps.push_back(std::move(rep));
    }

    const std::size_t d = prop_block_count(K);
    res.J = n * d;
    if (b.degree() > d) fail(errc::internal, "degree bound exceeded the closed form");
    res.B_K = b;
    res.M = b.is_zero_matrix() ? Matrix<Rational>::zero(res.J, res.J) : sharp_of(b, d);

    // Assert the whole point directly: powers up to K of both M and |M| are
    // traceless, and the pencil determinant certificate is preserved.
    Matrix<Rational> p = Matrix<Rational>::identity(res.J);
    Matrix<Rational> pa = p;
    const Matrix<Rational> mabs = entrywise_abs(res.M);
    for (std::size_t k = 1; k <= K; ++k) {
        p = p * res.M;
        pa = pa * mabs;
        if (!p.trace().is_zero() || !pa.trace().is_zero())
            fail(errc::internal, "nonzero trace at power " + std::to_string(k));
    }
    if (det_i_minus(res.B_K) != Poly<Rational>(1))
        fail(errc::internal, "pencil determinant is not 1");
    return res;
}

/// An elementary transvection I + c e_{ij}; a factor list whose product
/// reconstructs the conjugating matrix of shrink_norm.
struct ElementaryFactor {
    std::size_t i = 0, j = 0;
    Rational c;

    Matrix<Rational> to_matrix(std::size_t n) const {
        Matrix<Rational> m = Matrix<Rational>::identity(n);
        m.at(i, j) = c;
        return m;
    }
};

struct ShrinkResult {
    Matrix<Rational> V{1, 1};           // det(V) = 1
    Matrix<Rational> conjugated{1, 1};  // V^-1 N V, sup norm < delta
    std::vector<ElementaryFactor> factors;
};

namespace detail {

// Basis of the kernel of m over Q, as columns.
inline std::vector<std::vector<Rational>> kernel_basis(const Matrix<Rational>& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    Matrix<Rational> w = m;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && w.at(p, c).is_zero()) ++p;
        if (p == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(w.at(r, j), w.at(p, j));
        const Rational piv = w.at(r, c);
        for (std::size_t j = 0; j < cols; ++j) w.at(r, j) /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || w.at(i, c).is_zero()) continue;
            const Rational f = w.at(i, c);
            for (std::size_t j = 0; j < cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[fc] = Rational(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -w.at(i, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incrementally row-reduced independence test.
class SpanTracker {
public:
    explicit SpanTracker(std::size_t dim) : dim_(dim) {}

    bool try_add(const std::vector<Rational>& v) {
        std::vector<Rational> w = v;
        for (const auto& [lead, row] : rows_) {
            if (w[lead].is_zero()) continue;
            const Rational f = w[lead];
            for (std::size_t j = 0; j < dim_; ++j) w[j] -= f * row[j];
        }
        std::size_t lead = dim_;
        for (std::size_t j = 0; j < dim_; ++j)
            if (!w[j].is_zero()) {
                lead = j;
                break;
            }
        if (lead == dim_) return false;
        const Rational piv = w[lead];
        for (std::size_t j = 0; j < dim_; ++j) w[j] /= piv;
        rows_.emplace_back(lead, std::move(w));
        return true;
    }

private:
    std::size_t dim_;
    std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

// Columns adapted to the kernel flag ker N <= ker N^2 <= ...; in this basis N
// is strictly upper triangular.
inline Matrix<Rational> flag_basis(const Matrix<Rational>& n_mat) {
    const std::size_t n = n_mat.rows();
    Matrix<Rational> p(n, n);
    SpanTracker span(n);
    std::size_t filled = 0;
    Matrix<Rational> power = n_mat;
    for (std::size_t depth = 1; filled < n && depth <= n; ++depth) {
        for (const auto& v : kernel_basis(power)) {
            if (filled == n) break;
            if (!span.try_add(v)) continue;
            for (std::size_t i = 0; i < n; ++i) p.at(i, filled) = v[i];
            ++filled;
        }
        power = power * n_mat;
    }
    if (filled != n) fail(errc::internal, "kernel chain did not exhaust the space");
    return p;
}

// Reduce an SL(n, Q) matrix to the identity using only row transvections and
// return the factor list (in product order) reconstructing it.
inline std::vector<ElementaryFactor> transvection_factors(const Matrix<Rational>& v) {
    const std::size_t n = v.rows();
    Matrix<Rational> w = v;
    std::vector<ElementaryFactor> ops;  // applied left-to-right onto w
    const auto row_add = [&](std::size_t i, std::size_t j, const Rational& c) {
        if (c.is_zero()) return;
        for (std::size_t col = 0; col < n; ++col) w.at(i, col) += c * w.at(j, col);
        ops.push_back(ElementaryFactor{i, j, c});
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (k + 1 < n) {
            if (w.at(k, k).is_zero()) {
                std::size_t r = k + 1;
                while (r < n && w.at(r, k).is_zero()) ++r;
                if (r == n) fail(errc::internal, "singular matrix in transvection factoring");
                row_add(k, r, Rational(1));
            }
            if (w.at(k, k) != Rational(1)) {
                std::size_t r = k + 1;
                while (r < n && w.at(r, k).is_zero()) ++r;
                if (r == n) {
                    row_add(k + 1, k, Rational(1));
                    r = k + 1;
                }
                row_add(k, r, (Rational(1) - w.at(k, k)) / w.at(r, k));
            }
            for (std::size_t i = k + 1; i < n; ++i) row_add(i, k, -w.at(i, k));
        } else if (w.at(k, k) != Rational(1)) {
            fail(errc::internal, "determinant is not 1 in transvection factoring");
        }
    }
    for (std::size_t k = n; k-- > 1;)
        for (std::size_t i = 0; i < k; ++i) row_add(i, k, -w.at(i, k));
    // w is now I, so (E_m ... E_1) v = I and v = E_1^-1 ... E_m^-1.
    std::vector<ElementaryFactor> factors;
    factors.reserve(ops.size());
    for (const auto& e : ops) factors.push_back(ElementaryFactor{e.i, e.j, -e.c});
    return factors;
}

}  // namespace detail

/// Conjugates a nilpotent matrix into sup norm < delta by an SL(n, Q) matrix:
/// a flag basis makes it strictly upper triangular, then a determinant-one
/// diagonal with zero-sum exponent pattern gamma^(2a - n - 1) scales every
/// strict upper entry by at least gamma^2. V is returned together with a
/// transvection factor list whose product is exactly V.
inline ShrinkResult shrink_norm(const Matrix<Rational>& n_mat, const Rational& delta) {
    if (delta.sign() <= 0) fail(errc::invalid_tolerance, "delta must be positive");
    if (!n_mat.is_square()) fail(errc::shape, "input must be square");
    if (!is_nilpotent(n_mat).first) fail(errc::precondition, "input matrix is not nilpotent");
    const std::size_t n = n_mat.rows();

    ShrinkResult res;
    if (sup_norm(n_mat) < delta) {
        res.V = Matrix<Rational>::identity(n);
        res.conjugated = n_mat;
        return res;
    }

    Matrix<Rational> p = detail::flag_basis(n_mat);
    // Rescale one column so det(P) = 1; scaling a flag vector keeps the flag.
    const Rational detp = det_exact(p);
    for (std::size_t i = 0; i < n; ++i) p.at(i, n - 1) /= detp;
    Matrix<Rational> t = inverse(p) * n_mat * p;

    const Rational tnorm = sup_norm(t);
    // gamma = 1/g with gamma^2 * ||T|| < delta.
    mpz_class need = (tnorm / delta).raw().get_num() / (tnorm / delta).raw().get_den() + 1;
    mpz_class g = sqrt(need) + 1;
    const Rational gamma(mpz_class(1), g);

    Matrix<Rational> d(n, n), dinv(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        const long e = 2 * static_cast<long>(a) - static_cast<long>(n) + 1;  // sums to 0
        d.at(a, a) = gamma.pow(e);
        dinv.at(a, a) = gamma.pow(-e);
    }

    res.V = p * d;
    res.conjugated = dinv * t * d;
    res.factors = detail::transvection_factors(res.V);

    if (!(det_exact(res.V) == Rational(1))) fail(errc::internal, "conjugator determinant is not 1");
    if (!(sup_norm(res.conjugated) < delta)) fail(errc::internal, "conjugated norm not under delta");
    Matrix<Rational> check = Matrix<Rational>::identity(n);
    for (const auto& f : res.factors) check = check * f.to_matrix(n);
    if (check != res.V) fail(errc::internal, "factor list does not multiply to V");
    return res;
}

/// The whole pipeline: choose delta from the compounded norm bound, shrink,
/// then clear traces. The conjugation prefix rides along in the result.
struct Prop35Result {
    ShrinkResult shrink;
    ClearedResult cleared;
    Rational delta;
    Rational m_sup_norm;
};

inline Prop35Result full_prop35(const Matrix<Rational>& n_mat, std::size_t K) {
    if (K == 0) fail(errc::precondition, "K must be positive");
    if (!n_mat.is_square()) fail(errc::shape, "input must be square");
    if (!is_nilpotent(n_mat).first) fail(errc::precondition, "input matrix is not nilpotent");

    Prop35Result res;
    res.delta = prop_norm_budget(n_mat.rows(), K);
    res.shrink = shrink_norm(n_mat, res.delta);
    res.cleared = clear_traces(res.shrink.conjugated, K);
    res.m_sup_norm = sup_norm(res.cleared.M);
    return res;
}

}  // namespace ssekit
