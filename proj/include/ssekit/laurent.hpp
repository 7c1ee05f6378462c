#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace ssekit {

/// Element of Q[t, z, z^-1]: a finite sum of terms c * t^a * z^b with a >= 0,
/// b any integer, c a nonzero rational. The subring Q[t^2, t^3, z, z^-1] is
/// exactly the set of elements with no t^1 term, which in_subring() decides.
class Laurent {
public:
    // (t exponent, z exponent) -> coefficient; zero coefficients never stored.
    using TermMap = std::map<std::pair<int, int>, Rational>;

    Laurent() = default;
    Laurent(long n) {  // NOLINT(google-explicit-constructor)
        if (n != 0) terms_[{0, 0}] = Rational(n);
    }
    explicit Laurent(const Rational& c) {
        if (!c.is_zero()) terms_[{0, 0}] = c;
    }

    static Laurent term(const Rational& c, int t_exp, int z_exp) {
        if (t_exp < 0) fail(errc::domain, "negative t exponent in Laurent term");
        Laurent e;
        if (!c.is_zero()) e.terms_[{t_exp, z_exp}] = c;
        return e;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// True iff no monomial has t-exponent exactly 1, i.e. the element lies in
    /// Q[t^2, t^3, z, z^-1].
    bool in_subring() const {
        for (const auto& [e, c] : terms_)
            if (e.first == 1) return false;
        return true;
    }

    Laurent operator-() const {
        Laurent r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            if (e.first != 0) os << "*t^" << e.first;
            if (e.second != 0) os << "*z^" << e.second;
        }
        return os.str();
    }

private:
    void add_term(const std::pair<int, int>& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TermMap terms_;
};

inline bool is_zero(const Laurent& a) { return a.is_zero(); }

inline Laurent div_by_int(const Laurent& a, long n) {
    if (n == 0) fail(errc::domain, "division by zero");
    Laurent r;
    for (const auto& [e, c] : a.terms()) r += Laurent::term(div_by_int(c, n), e.first, e.second);
    return r;
}

namespace detail {

// Minimum z exponent over all terms (0 for the zero element).
inline int min_z_exp(const Laurent& a) {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : a.terms()) {
        if (first || e.second < m) m = e.second;
        first = false;
    }
    return m;
}

inline Laurent shift_z(const Laurent& a, int dz) {
    Laurent r;
    for (const auto& [e, c] : a.terms()) r += Laurent::term(c, e.first, e.second + dz);
    return r;
}

// Lex-leading term (t major, z minor) of a nonzero element with all z
// exponents >= 0. Used by the division loop below, where it strictly
// decreases, so the loop terminates.
inline std::pair<std::pair<int, int>, Rational> lex_lead(const Laurent& a) {
    return *a.terms().rbegin();
}

}  // namespace detail

/// Exact quotient a / b in Q[t, z, z^-1]. Both operands are shifted so the
/// minimal z exponent is 0, then ordinary multivariate division by the single
/// divisor runs under lex order. If b does not divide a this throws; callers
/// (Bareiss elimination) only divide when divisibility is guaranteed.
inline Laurent exact_div(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) fail(errc::domain, "exact division by zero");
    if (a.is_zero()) return Laurent();
    const int za = detail::min_z_exp(a), zb = detail::min_z_exp(b);
    Laurent f = detail::shift_z(a, -za);
    const Laurent g = detail::shift_z(b, -zb);
    const auto glead = detail::lex_lead(g);
    Laurent q;
    while (!f.is_zero()) {
        const auto flead = detail::lex_lead(f);
        const int dt = flead.first.first - glead.first.first;
        const int dz = flead.first.second - glead.first.second;
        if (dt < 0 || dz < 0) fail(errc::internal, "inexact Laurent division");
        const Laurent m = Laurent::term(flead.second / glead.second, dt, dz);
        q += m;
        f -= m * g;
    }
    return detail::shift_z(q, za - zb);
}

}  // namespace ssekit
