#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "epsexp/errors.hpp"

namespace epsexp {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.  Thin wrapper over GMP's mpq_class that adds the
/// operations the expansion engine needs (integer powers, decimal
/// rendering, integrality queries) and turns division by zero into a
/// library exception instead of undefined behavior.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, long den);
    explicit Rational(const mpz_class& z) : v_(z) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    const mpq_class& value() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }
    /// Requires is_integer().
    mpz_class to_integer() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

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

    /// this^e for any integer e (negative e inverts; 0^negative throws).
    Rational pow_int(long e) const;

    /// Lowest-terms string: "p/q", or just "p" when the denominator is 1.
    std::string str() const { return v_.get_str(); }

    /// Decimal rendering with exactly `digits` significant digits,
    /// round-half-even.  Positional format when the decimal exponent e
    /// satisfies -6 < e < digits, scientific otherwise.  Zero renders as
    /// "0." followed by digits-1 zeros.
    std::string decimal_string(int digits) const;

    /// Minimal exact decimal form ("1", "0.25", "-3.5") when the value
    /// terminates within `max_sig_digits` significant digits; nullopt
    /// otherwise.
    std::optional<std::string> exact_decimal_string(int max_sig_digits) const;

  private:
    mpq_class v_;
};

/// Parse "ddd.ddd" / "dddEk" style decimal text into the exact rational it
/// denotes.  Throws parse_error on malformed input.
Rational rational_from_decimal(const std::string& text);

/// Shared significant-digit placement: takes a digit string (no sign, no
/// point) whose first digit has decimal exponent e10, and lays it out
/// positionally or scientifically per the rendering rules.
std::string place_digits(bool negative, const std::string& digits, long e10, int total_digits);

} // namespace epsexp
