#pragma once

// Shared deterministic generators for the randomized suites.

#include <algorithm>
#include <cstdint>
#include <random>

#include "ssekit/matrix.hpp"
#include "ssekit/rational.hpp"
#include "ssekit/spectral.hpp"
#include "ssekit/sse.hpp"

namespace testgen {

using Rng = std::mt19937_64;
using ssekit::Matrix;
using ssekit::Rational;

inline Rational rand_rational(Rng& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> dn(-num_bound, num_bound), dd(1, den_bound);
    return Rational(dn(rng), dd(rng));
}

inline Matrix<Rational> rand_matrix(Rng& rng, std::size_t rows, std::size_t cols, long num_bound,
                                    long den_bound) {
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rand_rational(rng, num_bound, den_bound);
    return m;
}

// Strictly upper triangular seed conjugated by a few rational transvections:
// a nilpotent matrix that is usually dense with nonzero diagonal.
inline Matrix<Rational> rand_nilpotent(Rng& rng, std::size_t n, int conjugations = 3) {
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m.at(i, j) = rand_rational(rng, 3, 4);
    std::uniform_int_distribution<std::size_t> dv(0, n - 1);
    for (int r = 0; r < conjugations && n > 1; ++r) {
        const std::size_t i = dv(rng), j = dv(rng);
        if (i == j) continue;
        Matrix<Rational> e = Matrix<Rational>::identity(n);
        e.at(i, j) = rand_rational(rng, 2, 3);
        Matrix<Rational> einv = Matrix<Rational>::identity(n);
        einv.at(i, j) = -e.at(i, j);
        m = einv * m * e;
    }
    return m;
}

// Nonnegative nilpotent: nonnegative strictly upper seed shuffled by a random
// permutation similarity (which preserves both properties).
inline Matrix<Rational> rand_nonneg_nilpotent(Rng& rng, std::size_t n) {
    Matrix<Rational> m(n, n);
    std::uniform_int_distribution<long> entry(0, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m.at(i, j) = Rational(entry(rng));
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix<Rational> p(n, n);
    for (std::size_t i = 0; i < n; ++i) p.at(perm[i], i) = Rational(1);
    return p.transpose() * m * p;
}

inline Matrix<Rational> rand_nonneg_integer_matrix(Rng& rng, std::size_t n, long max_entry) {
    Matrix<Rational> m(n, n);
    std::uniform_int_distribution<long> entry(0, max_entry);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rational(entry(rng));
    return m;
}

// Rejection-sample a primitive 0/1 matrix.
inline Matrix<Rational> rand_primitive_01(Rng& rng, std::size_t n) {
    std::bernoulli_distribution edge(0.5);
    for (;;) {
        Matrix<Rational> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (edge(rng)) m.at(i, j) = Rational(1);
        if (m.is_zero_matrix()) continue;
        if (ssekit::is_primitive(m).primitive) return m;
    }
}

// Random SSE chain built from similarity and nilpotent-extension moves.
inline ssekit::SseChain<Rational> rand_sse_chain(Rng& rng, std::size_t lag) {
    std::uniform_int_distribution<std::size_t> dsz(1, 3);
    std::uniform_int_distribution<int> dmove(0, 2);
    ssekit::SseChain<Rational> chain;
    const std::size_t start = dsz(rng);
    Matrix<Rational> cur = rand_matrix(rng, start, start, 2, 2);
    chain.endpoints.push_back(cur);
    while (chain.steps.size() < lag) {
        const int move = dmove(rng);
        if (move == 0) {
            // similarity by an invertible near-transvection
            Matrix<Rational> u = Matrix<Rational>::identity(cur.rows());
            if (cur.rows() > 1) {
                std::uniform_int_distribution<std::size_t> dv(0, cur.rows() - 1);
                std::size_t i = dv(rng), j = dv(rng);
                if (i != j) u.at(i, j) = rand_rational(rng, 2, 2);
            }
            u.at(0, 0) = Rational(std::uniform_int_distribution<long>(1, 3)(rng));
            auto [next, w] = ssekit::similarity_move(cur, u);
            chain.endpoints.push_back(next);
            chain.steps.push_back(w);
            cur = next;
        } else {
            const std::size_t extra = dsz(rng) % 2 + 1;
            const bool upper = move == 1;
            Matrix<Rational> x = upper ? rand_matrix(rng, cur.rows(), extra, 2, 2)
                                       : rand_matrix(rng, extra, cur.rows(), 2, 2);
            // The move's witness certifies (extended, cur); the chain runs
            // cur -> extended, so swap the factor pair.
            auto [next, w] = ssekit::nilpotent_extension_move(
                cur, x, upper ? ssekit::ExtensionSide::upper : ssekit::ExtensionSide::lower);
            chain.endpoints.push_back(next);
            chain.steps.push_back(ssekit::EsseWitness<Rational>{w.V, w.U});
            cur = next;
        }
    }
    return chain;
}

}  // namespace testgen
