#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

#include "errors.hpp"

namespace ssekit {

/// Arbitrary-precision rational number, kept in canonical form: lowest terms,
/// denominator > 0. All arithmetic is exact. Values are immutable in spirit —
/// every operation returns a fresh canonical value.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den) {
        if (den == 0) fail(errc::domain, "rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) fail(errc::domain, "rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    /// Parses "p/q" or a bare integer "p". Whitespace is not accepted.
    static Rational from_string(const std::string& s) {
        if (s.empty()) fail(errc::parse, "empty rational literal");
        mpq_class q;
        try {
            q = mpq_class(s);
        } catch (const std::invalid_argument&) {
            fail(errc::parse, "bad rational literal '" + s + "'");
        }
        if (q.get_den() == 0) fail(errc::parse, "zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(Raw{}, q);
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const { return Rational(Raw{}, mpq_class(::abs(v_))); }

    Rational operator-() const { return Rational(Raw{}, mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) fail(errc::domain, "division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// Canonical "p/q" rendering, q > 0 (integers render as "p/1").
    std::string str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

    /// Exact power with integer exponent; negative exponents require a nonzero base.
    Rational pow(long e) const {
        if (e < 0) {
            if (is_zero()) fail(errc::domain, "0 to a negative power");
            return Rational(1) / pow(-e);
        }
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(Raw{}, mpq_class(n, d));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    struct Raw {};
    Rational(Raw, mpq_class q) : v_(std::move(q)) {}  // already canonical

    mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational abs(const Rational& r) { return r.abs(); }

/// Deterministic sample strictly inside (lo, hi): the midpoint.
inline Rational interval_sample(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) fail(errc::invalid_interval, "need lo < hi, got [" + lo.str() + ", " + hi.str() + "]");
    return (lo + hi) / Rational(2);
}

// --- ring customization points, overloaded per scalar type ---

inline Rational exact_div(const Rational& a, const Rational& b) {
    if (b.is_zero()) fail(errc::domain, "exact division by zero");
    return a / b;
}

inline Rational div_by_int(const Rational& a, long n) { return a / Rational(n); }

inline bool is_zero(const Rational& a) { return a.is_zero(); }

}  // namespace ssekit
