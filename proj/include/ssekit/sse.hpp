#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace ssekit {

/// One elementary strong shift equivalence: certifies the pair (UV, VU).
/// Verification always recomputes both products; stored endpoints are never
/// trusted.
template <class R>
struct EsseWitness {
    Matrix<R> U, V;
};

/// A lag-l SSE: endpoints A_0..A_l and one ESSE witness per step.
template <class R>
struct SseChain {
    std::vector<Matrix<R>> endpoints;
    std::vector<EsseWitness<R>> steps;

    std::size_t lag() const { return steps.size(); }
};

/// Shift equivalence witness: A^lag = UV, B^lag = VU, AU = UB, BV = VA.
template <class R>
struct SeWitness {
    Matrix<R> U, V;
    long lag = 1;
};

template <class R>
bool verify_esse(const Matrix<R>& a, const Matrix<R>& b, const EsseWitness<R>& w) {
    if (!a.is_square() || !b.is_square()) fail(errc::shape, "ESSE endpoints must be square");
    if (w.U.rows() != a.rows() || w.V.cols() != a.rows() || w.U.cols() != b.rows() ||
        w.V.rows() != b.rows())
        fail(errc::shape, "ESSE witness shape mismatch");
    return a == w.U * w.V && b == w.V * w.U;
}

template <class R>
bool verify_sse_chain(const SseChain<R>& c) {
    if (c.steps.empty()) return false;
    if (c.endpoints.size() != c.steps.size() + 1) return false;
    try {
        for (std::size_t i = 0; i < c.steps.size(); ++i)
            if (!verify_esse(c.endpoints[i], c.endpoints[i + 1], c.steps[i])) return false;
    } catch (const error&) {
        return false;  // malformed shapes are just invalid chains
    }
    return true;
}

template <class R>
bool verify_se(const Matrix<R>& a, const Matrix<R>& b, const SeWitness<R>& w) {
    if (w.lag <= 0) fail(errc::invalid_lag, "SE lag must be positive");
    if (!a.is_square() || !b.is_square()) fail(errc::shape, "SE endpoints must be square");
    if (w.U.rows() != a.rows() || w.U.cols() != b.rows() || w.V.rows() != b.rows() ||
        w.V.cols() != a.rows())
        fail(errc::shape, "SE witness shape mismatch");
    const auto lag = static_cast<std::size_t>(w.lag);
    return a.pow(lag) == w.U * w.V && b.pow(lag) == w.V * w.U && a * w.U == w.U * b &&
           b * w.V == w.V * a;
}

/// Williams: a lag-l SSE chain gives a lag-l SE with U = U_1...U_l and
/// V = V_l...V_1. The chain is re-verified first.
template <class R>
SeWitness<R> sse_to_se(const SseChain<R>& c) {
    if (!verify_sse_chain(c)) fail(errc::invalid_witness, "SSE chain does not verify");
    Matrix<R> u = c.steps.front().U;
    Matrix<R> v = c.steps.front().V;
    for (std::size_t i = 1; i < c.steps.size(); ++i) {
        u = u * c.steps[i].U;
        v = c.steps[i].V * v;
    }
    return SeWitness<R>{std::move(u), std::move(v), static_cast<long>(c.steps.size())};
}

/// Similarity as a single ESSE step: A = (u)(u^-1 A) and (u^-1 A)(u) = u^-1 A u.
inline std::pair<Matrix<Rational>, EsseWitness<Rational>> similarity_move(
    const Matrix<Rational>& a, const Matrix<Rational>& u) {
    if (!a.is_square() || !u.is_square() || a.rows() != u.rows())
        fail(errc::shape, "similarity requires square matrices of equal size");
    Matrix<Rational> uinv = inverse(u);  // throws not-a-unit when singular
    Matrix<Rational> v = uinv * a;
    return {v * u, EsseWitness<Rational>{u, std::move(v)}};
}

enum class ExtensionSide { upper, lower };

/// Maller-Shub nilpotent extension. upper: (A X; 0 0) via U = (I; 0), V = (A X).
/// lower: (0 X; 0 A) via U = (X; A), V = (0 I). The witness relates the
/// extended matrix to a.
template <class R>
std::pair<Matrix<R>, EsseWitness<R>> nilpotent_extension_move(const Matrix<R>& a,
                                                              const Matrix<R>& x,
                                                              ExtensionSide side) {
    if (!a.is_square()) fail(errc::shape, "extension base must be square");
    const std::size_t n = a.rows();
    if (side == ExtensionSide::upper) {
        if (x.rows() != n) fail(errc::shape, "upper extension needs x with matching row count");
        Matrix<R> ext(n + x.cols(), n + x.cols());
        ext.set_block(0, 0, a);
        ext.set_block(0, n, x);
        Matrix<R> u = vstack(Matrix<R>::identity(n), Matrix<R>::zero(x.cols(), n));
        Matrix<R> v = hstack(a, x);
        return {std::move(ext), EsseWitness<R>{std::move(u), std::move(v)}};
    }
    if (x.cols() != n) fail(errc::shape, "lower extension needs x with matching column count");
    Matrix<R> ext(x.rows() + n, x.rows() + n);
    ext.set_block(0, x.rows(), x);
    ext.set_block(x.rows(), x.rows(), a);
    Matrix<R> u = vstack(x, a);
    Matrix<R> v = hstack(Matrix<R>::zero(n, x.rows()), Matrix<R>::identity(n));
    return {std::move(ext), EsseWitness<R>{std::move(u), std::move(v)}};
}

namespace detail {

/// Topological order of the digraph with an edge i -> j iff m(i,j) != 0,
/// smallest index first among ready vertices. Fails if the digraph has a
/// cycle (cannot happen for nilpotent nonnegative matrices).
inline std::vector<std::size_t> topological_order(const Matrix<Rational>& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!m.at(i, j).is_zero()) ++indeg[j];
    std::vector<std::size_t> order;
    std::vector<bool> done(n, false);
    order.reserve(n);
    while (order.size() < n) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!done[v] && indeg[v] == 0) {
                pick = v;
                break;
            }
        if (pick == n) fail(errc::internal, "dependency digraph has a cycle");
        done[pick] = true;
        order.push_back(pick);
        for (std::size_t j = 0; j < n; ++j)
            if (!m.at(pick, j).is_zero()) --indeg[j];
    }
    return order;
}

}  // namespace detail

/// Reduction of a nonnegative nilpotent matrix to the 1x1 zero matrix: one
/// similarity by the permutation that triangularizes, then peeling the last
/// (zero) row and column one step at a time. Every step of the returned chain
/// verifies, and the last endpoint is exactly [0].
inline SseChain<Rational> reduce_nonneg_nilpotent(const Matrix<Rational>& n_mat) {
    if (!n_mat.is_square()) fail(errc::shape, "reduction needs a square matrix");
    if (!is_nonnegative(n_mat)) fail(errc::precondition, "matrix has a negative entry");
    if (!is_nilpotent(n_mat).first) fail(errc::precondition, "matrix is not nilpotent");

    const std::size_t n = n_mat.rows();
    const auto order = detail::topological_order(n_mat);
    Matrix<Rational> p(n, n);
    for (std::size_t a = 0; a < n; ++a) p.at(order[a], a) = Rational(1);

    SseChain<Rational> chain;
    chain.endpoints.push_back(n_mat);
    auto [tri, w] = similarity_move(n_mat, p);
    chain.endpoints.push_back(tri);
    chain.steps.push_back(std::move(w));

    Matrix<Rational> t = std::move(tri);
    while (t.rows() > 1) {
        const std::size_t m = t.rows();
        // t is strictly upper triangular, so its last row is zero:
        // t = (X Y; 0 0) = (I; 0)(X Y), and (X Y)(I; 0) = X.
        Matrix<Rational> x = t.block(0, 0, m - 1, m - 1);
        Matrix<Rational> y = t.block(0, m - 1, m - 1, 1);
        EsseWitness<Rational> step{
            vstack(Matrix<Rational>::identity(m - 1), Matrix<Rational>::zero(1, m - 1)),
            hstack(x, y)};
        chain.endpoints.push_back(x);
        chain.steps.push_back(std::move(step));
        t = std::move(x);
    }
    return chain;
}

}  // namespace ssekit
