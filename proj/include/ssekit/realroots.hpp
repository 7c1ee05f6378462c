#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace ssekit {

/// Isolating interval for one distinct real root: either an exact rational
/// root (lo == hi) or an open interval (lo, hi) on which the polynomial
/// changes sign and contains exactly one root.
struct RootInterval {
    Rational lo, hi;
    bool exact = false;

    Rational abs_lower() const {  // inf |x| over the interval
        if (exact) return lo.abs();
        if (hi.sign() <= 0) return hi.abs();
        if (lo.sign() >= 0) return lo;
        return Rational(0);
    }
    Rational abs_upper() const {  // sup |x| over the interval
        if (exact) return lo.abs();
        return lo.abs() > hi.abs() ? lo.abs() : hi.abs();
    }
};

/// Sturm chain of a squarefree polynomial; counts distinct real roots in
/// half-open intervals (a, b] by sign-variation differences.
class SturmChain {
public:
    explicit SturmChain(const QPoly& squarefree) {
        seq_.push_back(squarefree);
        if (squarefree.degree() >= 1) {
            seq_.push_back(derivative(squarefree));
            while (seq_.back().degree() >= 1) {
                QPoly r = poly_divrem(seq_[seq_.size() - 2], seq_.back()).second;
                if (r.is_zero_poly()) break;
                // Normalizing by the positive |lead| keeps signs and tames growth.
                seq_.push_back((Rational(1) / r.lead().abs()) * (-r));
            }
        }
    }

    int variations_at(const Rational& x) const {
        int count = 0, prev = 0;
        for (const auto& p : seq_) {
            const int s = p.eval(x).sign();
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    long count_in(const Rational& a, const Rational& b) const {
        return variations_at(a) - variations_at(b);
    }

private:
    std::vector<QPoly> seq_;
};

/// 1 + max |c_i / c_lead|: every root has modulus below this.
inline Rational cauchy_root_bound(const QPoly& p) {
    if (p.is_zero_poly()) fail(errc::domain, "root bound of the zero polynomial");
    Rational best(0);
    for (int i = 0; i < p.degree(); ++i) {
        Rational a = (p.coeff(static_cast<std::size_t>(i)) / p.lead()).abs();
        if (a > best) best = a;
    }
    return Rational(1) + best;
}

namespace detail {

inline void isolate_rec(const QPoly& p, const SturmChain& chain, const Rational& a,
                        const Rational& b, std::vector<RootInterval>& out) {
    const long count = chain.count_in(a, b);
    if (count <= 0) return;
    if (count == 1) {
        if (p.eval(b).is_zero()) {
            out.push_back(RootInterval{b, b, true});
        } else {
            out.push_back(RootInterval{a, b, false});
        }
        return;
    }
    Rational m = (a + b) / Rational(2);
    if (p.eval(m).is_zero()) {
        out.push_back(RootInterval{m, m, true});
        // Shrink a guard h until (m-h, m+h] holds only this root.
        Rational h = (b - a) / Rational(4);
        while (chain.count_in(m - h, m + h) != 1 || p.eval(m - h).is_zero() ||
               p.eval(m + h).is_zero())
            h /= Rational(2);
        isolate_rec(p, chain, a, m - h, out);
        isolate_rec(p, chain, m + h, b, out);
        return;
    }
    isolate_rec(p, chain, a, m, out);
    isolate_rec(p, chain, m, b, out);
}

}  // namespace detail

/// Isolating intervals for the distinct real roots of p, sorted ascending.
/// Multiplicities are collapsed first (isolation runs on the squarefree part).
inline std::vector<RootInterval> isolate_real_roots(const QPoly& p) {
    if (p.is_zero_poly()) fail(errc::domain, "cannot isolate roots of the zero polynomial");
    const QPoly sf = squarefree_part(p);
    if (sf.degree() < 1) return {};
    const SturmChain chain(sf);
    const Rational bound = cauchy_root_bound(sf) + Rational(1);
    std::vector<RootInterval> out;
    detail::isolate_rec(sf, chain, -bound, bound, out);
    return out;
}

/// One bisection step; keeps the sign-change invariant. No-op on exact roots.
inline void refine_root(const QPoly& sf, RootInterval& iv) {
    if (iv.exact) return;
    const Rational m = (iv.lo + iv.hi) / Rational(2);
    const int sm = sf.eval(m).sign();
    if (sm == 0) {
        iv.lo = iv.hi = m;
        iv.exact = true;
        return;
    }
    if (sm == sf.eval(iv.lo).sign())
        iv.lo = m;
    else
        iv.hi = m;
}

/// Refine until the interval width drops below `width` (or the root is exact).
inline void refine_root_below(const QPoly& sf, RootInterval& iv, const Rational& width) {
    while (!iv.exact && iv.hi - iv.lo >= width) refine_root(sf, iv);
}

}  // namespace ssekit
