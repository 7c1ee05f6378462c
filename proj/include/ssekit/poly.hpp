#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace ssekit {

/// Dense univariate polynomial over an exact ring R, ascending coefficients,
/// no trailing zeros stored. The zero polynomial has degree -1 by convention.
template <class R>
class Poly {
public:
    Poly() = default;
    Poly(long n) {  // NOLINT(google-explicit-constructor)
        if (n != 0) c_.push_back(R(n));
    }
    explicit Poly(const R& v) {
        if (!is_zero(v)) c_.push_back(v);
    }
    static Poly from_coeffs(std::vector<R> c) {
        Poly p;
        p.c_ = std::move(c);
        p.trim();
        return p;
    }
    /// c * x^k
    static Poly term(const R& c, std::size_t k) {
        Poly p;
        if (!is_zero(c)) {
            p.c_.assign(k + 1, R(0));
            p.c_[k] = c;
        }
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero_poly() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }
    R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R(0); }
    R lead() const { return c_.empty() ? R(0) : c_.back(); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<R> c(std::max(a.c_.size(), b.c_.size()), R(0));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return from_coeffs(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero_poly() || b.is_zero_poly()) return Poly();
        std::vector<R> c(a.c_.size() + b.c_.size() - 1, R(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return from_coeffs(std::move(c));
    }
    friend Poly operator*(const R& s, const Poly& p) {
        Poly r;
        r.c_.reserve(p.c_.size());
        for (const auto& x : p.c_) r.c_.push_back(s * x);
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    R eval(const R& x) const {
        R acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// p(-x)
    Poly flip_sign() const {
        Poly r = *this;
        for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
        return r;
    }

    std::string str(const char* var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (is_zero(c_[i])) continue;
            if (i + 1 < c_.size()) os << " + ";
            os << "(" << c_[i].str() << ")";
            if (i > 0) os << var << "^" << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R>& p) {
    return p.is_zero_poly();
}

template <class R>
Poly<R> div_by_int(const Poly<R>& p, long n) {
    std::vector<R> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(div_by_int(x, n));
    return Poly<R>::from_coeffs(std::move(c));
}

/// Exact quotient in R[x] (throws if division is not exact). Each step divides
/// leading coefficients via the scalar exact_div, which is itself exact
/// whenever the polynomial division is.
template <class R>
Poly<R> exact_div(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero_poly()) fail(errc::domain, "polynomial division by zero");
    if (a.is_zero_poly()) return Poly<R>();
    if (a.degree() < b.degree()) fail(errc::internal, "inexact polynomial division");
    std::vector<R> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, R(0));
    Poly<R> rem = a;
    while (!rem.is_zero_poly() && rem.degree() >= b.degree()) {
        const std::size_t k = static_cast<std::size_t>(rem.degree() - b.degree());
        const R c = exact_div(rem.lead(), b.lead());
        q[k] = c;
        rem -= Poly<R>::term(c, k) * b;
    }
    if (!rem.is_zero_poly()) fail(errc::internal, "inexact polynomial division");
    return Poly<R>::from_coeffs(std::move(q));
}

using QPoly = Poly<Rational>;

// --- field operations over Q ---

inline std::pair<QPoly, QPoly> poly_divrem(const QPoly& a, const QPoly& b) {
    if (b.is_zero_poly()) fail(errc::domain, "polynomial division by zero");
    QPoly q, r = a;
    while (!r.is_zero_poly() && r.degree() >= b.degree()) {
        const std::size_t k = static_cast<std::size_t>(r.degree() - b.degree());
        const Rational c = r.lead() / b.lead();
        q += QPoly::term(c, k);
        r -= QPoly::term(c, k) * b;
    }
    return {q, r};
}

inline QPoly derivative(const QPoly& p) {
    if (p.degree() <= 0) return QPoly();
    std::vector<Rational> c(static_cast<std::size_t>(p.degree()), Rational(0));
    for (std::size_t i = 1; i < p.coeffs().size(); ++i)
        c[i - 1] = Rational(static_cast<long>(i)) * p.coeffs()[i];
    return QPoly::from_coeffs(std::move(c));
}

inline QPoly make_monic(const QPoly& p) {
    if (p.is_zero_poly()) return p;
    return (Rational(1) / p.lead()) * p;
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero_poly()) {
        QPoly r = poly_divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

/// p with all repeated factors collapsed to multiplicity one.
inline QPoly squarefree_part(const QPoly& p) {
    if (p.degree() <= 0) return make_monic(p);
    QPoly g = poly_gcd(p, derivative(p));
    if (g.degree() <= 0) return make_monic(p);
    return make_monic(exact_div(p, g));
}

/// Newton's identities: power sums p_1..p_nmax of the root multiset of a monic
/// polynomial, from its coefficients alone. No root extraction, no division.
template <class R>
std::vector<R> power_sums(const std::vector<R>& monic_coeffs, std::size_t n_max) {
    if (monic_coeffs.empty() || !(monic_coeffs.back() == R(1)))
        fail(errc::precondition, "power sums require a monic coefficient sequence");
    const std::size_t k = monic_coeffs.size() - 1;
    std::vector<R> p(n_max + 1, R(0));
    for (std::size_t m = 1; m <= n_max; ++m) {
        R s(0);
        for (std::size_t i = 1; i < m && i <= k; ++i) s += monic_coeffs[k - i] * p[m - i];
        if (m <= k) s += R(static_cast<long>(m)) * monic_coeffs[k - m];
        p[m] = -s;
    }
    return std::vector<R>(p.begin() + 1, p.end());
}

}  // namespace ssekit
