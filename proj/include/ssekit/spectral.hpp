#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "realroots.hpp"

namespace ssekit {

/// mu(1) = 1; mu(n) = (-1)^r for a product of r distinct primes; 0 when a
/// square divides n. Trial factorization; inputs here are tiny.
inline int moebius(unsigned long n) {
    if (n == 0) fail(errc::domain, "moebius is undefined at 0");
    int r = 0;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        ++r;
    }
    if (n > 1) ++r;
    return (r % 2 == 0) ? 1 : -1;
}

/// Candidate nonzero spectrum, encoded by the monic polynomial prod (t - d_i)
/// through its ascending coefficient sequence. Nothing is ever factored.
struct SpectrumDescriptor {
    std::vector<Rational> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    void validate() const {
        if (coeffs.size() < 2 || !(coeffs.back() == Rational(1)))
            fail(errc::precondition, "spectrum polynomial must be monic of degree >= 1");
        if (coeffs.front().is_zero())
            fail(errc::precondition, "spectrum entries must be nonzero (zero constant term)");
    }
};

/// Strips the t^m factor from a characteristic polynomial, leaving the monic
/// polynomial of the nonzero spectrum. Returns the constant 1 sequence for a
/// nilpotent matrix (empty spectrum).
inline std::vector<Rational> nonzero_spectrum_poly(const std::vector<Rational>& char_coeffs) {
    std::size_t m = 0;
    while (m < char_coeffs.size() && char_coeffs[m].is_zero()) ++m;
    return std::vector<Rational>(char_coeffs.begin() + static_cast<long>(m), char_coeffs.end());
}

/// tr_n(Delta) = sum_{d | n} mu(n/d) tr(Delta^d), with the power traces
/// produced by Newton's identities from the coefficients.
inline Rational net_trace(const SpectrumDescriptor& delta, std::size_t n) {
    delta.validate();
    if (n == 0) fail(errc::domain, "net trace needs n >= 1");
    const std::vector<Rational> p = power_sums(delta.coeffs, n);
    Rational acc(0);
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        const int mu = moebius(n / d);
        if (mu == 0) continue;
        acc += Rational(mu) * p[d - 1];
    }
    return acc;
}

enum class Verdict { yes, no, indeterminate };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

namespace detail {

struct QInterval {  // closed rational interval
    Rational lo, hi;

    static QInterval point(const Rational& x) { return {x, x}; }
    Rational abs_upper() const { return lo.abs() > hi.abs() ? lo.abs() : hi.abs(); }
    Rational abs_lower() const {
        if (lo.sign() > 0) return lo;
        if (hi.sign() < 0) return -hi;
        return Rational(0);
    }
    friend QInterval operator+(const QInterval& a, const QInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend QInterval operator*(const QInterval& a, const QInterval& b) {
        Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        Rational lo = c[0], hi = c[0];
        for (int i = 1; i < 4; ++i) {
            if (c[i] < lo) lo = c[i];
            if (c[i] > hi) hi = c[i];
        }
        return {lo, hi};
    }
};

// One root-squaring step: roots of the result are the squares of the roots
// of q (monic in, monic out).
inline QPoly graeffe_step(const QPoly& q) {
    const QPoly prod = q * q.flip_sign();
    std::vector<Rational> even;
    even.reserve(static_cast<std::size_t>(prod.degree() / 2) + 1);
    for (int i = 0; i <= prod.degree(); i += 2) even.push_back(prod.coeff(static_cast<std::size_t>(i)));
    QPoly s = QPoly::from_coeffs(std::move(even));
    if (q.degree() % 2 == 1) s = Rational(-1) * s;
    return s;
}

// Enclosures of the coefficients of q / (x - rho) for rho inside the given
// interval, by synthetic division in interval arithmetic. q is monic.
inline std::vector<QInterval> deflate_enclosure(const QPoly& q, const QInterval& rho) {
    const std::size_t k = static_cast<std::size_t>(q.degree());
    std::vector<QInterval> g(k);  // degree k-1, ascending
    g[k - 1] = QInterval::point(Rational(1));
    for (std::size_t i = k - 1; i-- > 0;)
        g[i] = QInterval::point(q.coeff(i + 1)) + rho * g[i + 1];
    return g;
}

// Fujiwara: all roots of the monic enclosed polynomial have modulus
// < bound if 2^i * U_{deg - i} < bound^i for every i >= 1.
inline bool fujiwara_dominated(const std::vector<QInterval>& g, const Rational& bound) {
    if (bound.sign() <= 0) return false;
    const std::size_t deg = g.size() - 1;  // monic of this degree
    Rational two_pow(1), bound_pow(1);
    for (std::size_t i = 1; i <= deg; ++i) {
        two_pow *= Rational(2);
        bound_pow *= bound;
        if (!(two_pow * g[deg - i].abs_upper() < bound_pow)) return false;
    }
    return true;
}

}  // namespace detail

struct PerronAnalysis {
    Verdict verdict = Verdict::indeterminate;
    bool has_candidate = false;
    RootInterval candidate;  // bracket of the dominant positive root, when found
};

/// Decides whether the root multiset has a Perron value: a positive simple
/// real root strictly exceeding every other root in modulus. Real roots are
/// handled exactly (Sturm isolation; ties ruled out via gcd certificates);
/// complex roots are dominated through Graeffe iteration plus a Fujiwara bound
/// on the interval-deflated polynomial, or refuted through power-sum lower
/// bounds. tol sets the refinement floor: an indeterminate verdict means the
/// budget at this tolerance was exhausted, not "no".
inline PerronAnalysis has_perron_value(const SpectrumDescriptor& delta, const Rational& tol) {
    if (tol.sign() <= 0) fail(errc::invalid_tolerance, "tolerance must be positive");
    delta.validate();
    const QPoly p = QPoly::from_coeffs(delta.coeffs);
    const QPoly sf = squarefree_part(p);
    std::vector<RootInterval> roots = isolate_real_roots(sf);

    PerronAnalysis res;
    if (roots.empty()) {
        res.verdict = Verdict::no;  // no real root at all
        return res;
    }

    RootInterval rho = roots.back();
    // Pin the sign of the largest real root (0 is never a root here).
    while (!rho.exact && !(rho.lo.sign() > 0)) {
        if (rho.hi.sign() <= 0) break;
        refine_root(sf, rho);
    }
    const bool rho_positive = rho.exact ? rho.lo.sign() > 0 : rho.lo.sign() > 0;
    if (!rho_positive) {
        res.verdict = Verdict::no;
        return res;
    }
    res.has_candidate = true;

    // Simplicity in p: the repeated-root part gcd(p, p') must not vanish at rho.
    const QPoly rep = poly_gcd(p, derivative(p));
    if (rep.degree() >= 1) {
        const bool multiple = rho.exact ? rep.eval(rho.lo).is_zero()
                                        : SturmChain(squarefree_part(rep))
                                                  .count_in(rho.lo, rho.hi) > 0;
        if (multiple) {
            res.candidate = rho;
            res.verdict = Verdict::no;
            return res;
        }
    }
    // Exact tie with -rho: common roots of sf(x) and sf(-x).
    {
        QPoly mirror = poly_gcd(sf, sf.flip_sign());
        if (mirror.degree() >= 1) {
            const bool tie = rho.exact ? mirror.eval(rho.lo).is_zero()
                                       : SturmChain(squarefree_part(mirror))
                                                 .count_in(rho.lo, rho.hi) > 0;
            if (tie) {
                res.candidate = rho;
                res.verdict = Verdict::no;
                return res;
            }
        }
    }

    // Other real roots: exact comparison |mu| vs rho by joint refinement.
    // Strict inequality always resolves; the |mu| = rho tie was excluded above.
    for (std::size_t idx = 0; idx + 1 < roots.size(); ++idx) {
        RootInterval mu = roots[idx];
        while (!mu.exact && mu.lo.sign() < 0 && mu.hi.sign() > 0) refine_root(sf, mu);
        for (int guard = 0; guard < 4096; ++guard) {
            const Rational rho_low = rho.exact ? rho.lo : rho.lo;
            const Rational rho_high = rho.exact ? rho.hi : rho.hi;
            if (mu.abs_upper() < rho_low) break;  // dominated
            if (mu.abs_lower() > rho_high) {
                res.candidate = rho;
                res.verdict = Verdict::no;
                return res;
            }
            refine_root(sf, mu);
            refine_root(sf, rho);
        }
        if (!(mu.abs_upper() < rho.lo)) {
            res.candidate = rho;
            res.verdict = Verdict::indeterminate;
            return res;
        }
    }

    res.candidate = rho;
    const std::size_t k = static_cast<std::size_t>(sf.degree());
    if (roots.size() == k) {  // no complex roots left
        res.verdict = Verdict::yes;
        return res;
    }

    // Complex remainder: Graeffe amplification with certified bounds.
    QPoly q = sf;
    Rational width_floor = tol;
    for (int m = 0; m < 10; ++m) {
        // Tighten the bracket so the powered interval stays narrow.
        if (!rho.exact) {
            Rational target = rho.lo;
            for (int i = 0; i < m + 3; ++i) target /= Rational(2);
            if (target < width_floor) target = width_floor;
            refine_root_below(sf, rho, target);
        }
        detail::QInterval rho_m{rho.lo, rho.hi};
        for (int i = 0; i < m; ++i) rho_m = rho_m * rho_m;

        const auto g = detail::deflate_enclosure(q, rho_m);
        if (detail::fujiwara_dominated(g, rho_m.lo)) {
            res.verdict = Verdict::yes;
            return res;
        }
        // Lower-bound refutation: some other root must exceed rho in modulus
        // when a power sum of the others is too large.
        const auto sums = power_sums(q.coeffs(), 2 * k + 4);
        Rational rho_pow_lo(1), rho_pow_hi(1);
        bool refuted = false;
        for (std::size_t j = 1; j <= 2 * k + 4 && !refuted; ++j) {
            rho_pow_lo *= rho_m.lo;
            rho_pow_hi *= rho_m.hi;
            const detail::QInterval others{sums[j - 1] - rho_pow_hi, sums[j - 1] - rho_pow_lo};
            if (others.abs_lower() > Rational(static_cast<long>(k - 1)) * rho_pow_hi)
                refuted = true;
        }
        if (refuted) {
            res.verdict = Verdict::no;
            return res;
        }
        q = detail::graeffe_step(q);
    }
    res.verdict = Verdict::indeterminate;
    return res;
}

enum class RingMode { integer_ring, dense_ring };

/// Finite-range verdicts for the three spectral conditions. Range-limited by
/// construction: trace_conditions_ok only speaks for n <= n_max (and k <= k_max
/// in the dense case).
struct SpectralReport {
    RingMode mode = RingMode::integer_ring;
    std::size_t n_max = 0, k_max = 0;
    Verdict perron = Verdict::indeterminate;
    bool coeffs_in_ring_ok = false;
    bool trace_conditions_ok = false;
    bool range_limited = true;
    std::vector<Rational> net_traces;    // integer mode, indices 1..n_max
    std::vector<Rational> power_traces;  // dense mode, indices 1..n_max*k_max

    bool all_ok() const {
        return perron == Verdict::yes && coeffs_in_ring_ok && trace_conditions_ok;
    }
};

inline SpectralReport check_spectral_conditions(const SpectrumDescriptor& delta, RingMode mode,
                                                std::size_t n_max, std::size_t k_max,
                                                const Rational& tol) {
    if (n_max == 0 || k_max == 0) fail(errc::precondition, "n_max and k_max must be >= 1");
    delta.validate();
    SpectralReport rep;
    rep.mode = mode;
    rep.n_max = n_max;
    rep.k_max = k_max;
    rep.perron = has_perron_value(delta, tol).verdict;

    if (mode == RingMode::integer_ring) {
        rep.coeffs_in_ring_ok = true;
        for (const auto& c : delta.coeffs)
            if (!c.is_integer()) rep.coeffs_in_ring_ok = false;
        rep.trace_conditions_ok = true;
        rep.net_traces.reserve(n_max);
        for (std::size_t n = 1; n <= n_max; ++n) {
            rep.net_traces.push_back(net_trace(delta, n));
            if (rep.net_traces.back().sign() < 0) rep.trace_conditions_ok = false;
        }
    } else {
        rep.coeffs_in_ring_ok = true;  // Q coefficients by representation
        rep.power_traces = power_sums(delta.coeffs, n_max * k_max);
        rep.trace_conditions_ok = true;
        for (std::size_t n = 1; n <= n_max; ++n) {
            if (rep.power_traces[n - 1].sign() < 0) rep.trace_conditions_ok = false;
            if (rep.power_traces[n - 1].sign() > 0)
                for (std::size_t k = 1; k <= k_max; ++k)
                    if (!(rep.power_traces[n * k - 1].sign() > 0))
                        rep.trace_conditions_ok = false;
        }
    }
    return rep;
}

/// Primitivity certificate: a verified positive power (with the Wielandt
/// bound as the search cap), or the graph-theoretic obstruction.
struct PrimitivityCert {
    bool primitive = false;
    bool strongly_connected = false;
    std::optional<std::size_t> witness_power;
    std::optional<std::size_t> period;
    std::vector<std::size_t> failing_component;
};

inline std::size_t wielandt_bound(std::size_t n) { return (n - 1) * (n - 1) + 1; }

inline PrimitivityCert is_primitive(const Matrix<Rational>& a) {
    if (!a.is_square()) fail(errc::shape, "primitivity of non-square matrix");
    if (!is_nonnegative(a)) fail(errc::precondition, "primitivity needs a nonnegative matrix");
    const std::size_t n = a.rows();

    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    bool any_edge = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a.at(i, j).is_zero()) adj[i][j] = any_edge = true;

    const auto reach_from = [&](std::size_t s, bool backward) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w) {
                const bool edge = backward ? adj[w][v] : adj[v][w];
                if (edge && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    };

    PrimitivityCert cert;
    const auto fwd = reach_from(0, false);
    const auto bwd = reach_from(0, true);
    cert.strongly_connected = true;
    for (std::size_t v = 0; v < n; ++v)
        if (!fwd[v] || !bwd[v]) {
            cert.strongly_connected = false;
            cert.failing_component.push_back(v);
        }
    if (!cert.strongly_connected) return cert;
    if (!any_edge) return cert;  // single vertex, no loop: no cycles at all

    // Cycle gcd via BFS levels from vertex 0.
    std::vector<long> level(n, -1);
    std::vector<std::size_t> queue{0};
    level[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t v = queue[head];
        for (std::size_t w = 0; w < n; ++w)
            if (adj[v][w] && level[w] < 0) {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
    }
    unsigned long g = 0;
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w)
            if (adj[v][w]) {
                const long diff = level[v] + 1 - level[w];
                g = std::gcd(g, static_cast<unsigned long>(diff < 0 ? -diff : diff));
            }
    cert.period = static_cast<std::size_t>(g);
    if (g != 1) return cert;

    // Boolean power search for the positivity witness, then one exact check.
    std::vector<std::vector<bool>> pw = adj;
    std::size_t k = 1;
    const std::size_t cap = wielandt_bound(n);
    const auto all_true = [&](const std::vector<std::vector<bool>>& b) {
        for (const auto& row : b)
            for (bool x : row)
                if (!x) return false;
        return true;
    };
    while (!all_true(pw) && k < cap) {
        std::vector<std::vector<bool>> nx(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (pw[i][l])
                    for (std::size_t j = 0; j < n; ++j)
                        if (adj[l][j]) nx[i][j] = true;
        pw = std::move(nx);
        ++k;
    }
    if (!all_true(pw)) fail(errc::internal, "aperiodic strongly connected but no power within the Wielandt bound");
    const Matrix<Rational> ak = a.pow(k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!(ak.at(i, j) > Rational(0)))
                fail(errc::internal, "boolean witness power disagrees with exact power");
    cert.primitive = true;
    cert.witness_power = k;
    return cert;
}

/// The two block conjugations of the primitive-assembly argument, applied to
/// diag(C, M0) with 1/3 < eps < 2/3 and |3 M0| <= C entrywise. Both
/// conjugation identities are recomputed symbolically; the result G is
/// nonnegative and primitive whenever C is primitive.
struct AssemblyResult {
    Matrix<Rational> G{1, 1};
    Matrix<Rational> upper_form{1, 1};  // ( C  eps(C - M0) ; 0  M0 )
    bool identities_ok = false;
    Rational eps;
    PrimitivityCert c_cert, g_cert;
};

inline AssemblyResult primitive_assembly(const Matrix<Rational>& c, const Matrix<Rational>& m0,
                                         const Rational& eps) {
    if (!c.is_square() || !m0.is_square() || c.rows() != m0.rows())
        fail(errc::shape, "assembly needs square matrices of equal size");
    if (!(Rational(1, 3) < eps && eps < Rational(2, 3)))
        fail(errc::precondition, "eps must lie strictly inside (1/3, 2/3), got " + eps.str());
    if (!is_nonnegative(c)) fail(errc::precondition, "C must be nonnegative");
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j)
            if (Rational(3) * m0.at(i, j).abs() > c.at(i, j))
                fail(errc::nonnegativity_risk,
                     "|3 M0| <= C fails at entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ")");

    const std::size_t n = c.rows();
    const auto id = Matrix<Rational>::identity(n);
    const Matrix<Rational> e_block = eps * (c - m0);

    const auto block2 = [&](const Matrix<Rational>& a11, const Matrix<Rational>& a12,
                            const Matrix<Rational>& a21, const Matrix<Rational>& a22) {
        Matrix<Rational> m(2 * n, 2 * n);
        m.set_block(0, 0, a11);
        m.set_block(0, n, a12);
        m.set_block(n, 0, a21);
        m.set_block(n, n, a22);
        return m;
    };

    const auto zero = Matrix<Rational>::zero(n, n);
    const auto d0 = block2(c, zero, zero, m0);
    const auto first = block2(id, -(eps * id), zero, id) * d0 * block2(id, eps * id, zero, id);
    const auto upper_expected = block2(c, e_block, zero, m0);

    const auto second = block2(id, zero, id, id) * upper_expected * block2(id, zero, -id, id);
    const Rational om = Rational(1) - eps;
    const auto g_formula =
        block2(om * c + eps * m0, e_block, om * (c - m0), eps * c + om * m0);

    AssemblyResult res;
    res.eps = eps;
    res.upper_form = upper_expected;
    res.identities_ok = (first == upper_expected) && (second == g_formula);
    if (!res.identities_ok) fail(errc::internal, "block conjugation identities failed");
    if (!is_nonnegative(g_formula))
        fail(errc::internal, "G has a negative entry despite the dominance precondition");
    res.G = g_formula;
    res.c_cert = is_primitive(c);
    res.g_cert = is_primitive(res.G);
    if (res.c_cert.primitive && !res.g_cert.primitive)
        fail(errc::internal, "C primitive but G not primitive");
    return res;
}

/// Points of least period n of the edge shift of a nonnegative integer
/// matrix, by explicit enumeration of closed vertex walks (weights multiply
/// parallel edge counts) and subtraction over proper divisors. This is the
/// independent oracle backing the net-trace identity; it never touches
/// characteristic polynomials or Newton's identities.
inline Rational count_least_period_points(const Matrix<Rational>& a, std::size_t n) {
    if (!a.is_square()) fail(errc::shape, "orbit counting needs a square matrix");
    if (n == 0 || n > 10) fail(errc::precondition, "period must lie in 1..10");
    const std::size_t sz = a.rows();
    std::vector<std::vector<mpz_class>> e(sz, std::vector<mpz_class>(sz));
    for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j) {
            const Rational& x = a.at(i, j);
            if (!x.is_integer() || x.sign() < 0)
                fail(errc::precondition, "entries must be nonnegative integers");
            e[i][j] = x.num();
        }

    const auto closed_walks = [&](std::size_t len) {
        mpz_class total = 0;
        // DFS over vertex sequences; the weight of a walk is the product of
        // the traversed entry values (parallel edge multiplicities).
        struct Frame {
            std::size_t v;
            std::size_t left;
            mpz_class weight;
        };
        for (std::size_t start = 0; start < sz; ++start) {
            std::vector<Frame> stack{{start, len, mpz_class(1)}};
            while (!stack.empty()) {
                Frame f = std::move(stack.back());
                stack.pop_back();
                if (f.left == 0) {
                    if (f.v == start) total += f.weight;
                    continue;
                }
                for (std::size_t w = 0; w < sz; ++w)
                    if (e[f.v][w] != 0) stack.push_back({w, f.left - 1, f.weight * e[f.v][w]});
            }
        }
        return total;
    };

    std::vector<mpz_class> least(n + 1);
    for (std::size_t m = 1; m <= n; ++m) {
        if (n % m) continue;
        mpz_class l = closed_walks(m);
        for (std::size_t d = 1; d < m; ++d)
            if (m % d == 0) l -= least[d];
        least[m] = l;
    }
    return Rational(least[n], mpz_class(1));
}

}  // namespace ssekit
