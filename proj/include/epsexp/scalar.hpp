#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "epsexp/complexfloat.hpp"
#include "epsexp/rational.hpp"

namespace epsexp {

enum class Backend { Exact, Float, Complex };

std::string backend_name(Backend b);

/// Tagged union over the three numeric backends.  Arithmetic between
/// scalars of different backends throws backend_mismatch: a computation
/// picks one backend up front and stays in it.
class Scalar {
  public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(std::move(r)) {}
    Scalar(BigFloat f) : v_(std::move(f)) {}
    Scalar(ComplexFloat c) : v_(std::move(c)) {}

    static Scalar from_long(long v, Backend b, mpfr_prec_t prec = 0);

    /// Parse one literal: integers "12", fractions "-3/4", decimals
    /// "2.5e-3", pi-terms "pi" / "-pi/2", and (complex backend only) an
    /// "i" suffix on any of those.  The result always lives in the
    /// requested backend; decimals become exact powers-of-ten rationals
    /// in the exact backend, while pi-terms throw pi_not_exact there.
    static Scalar from_literal(std::string_view text, Backend b, mpfr_prec_t prec = 0);

    Backend backend() const;

    const Rational& rational() const;
    const BigFloat& floating() const;
    const ComplexFloat& complex_value() const;

    bool is_zero() const;
    /// True when the value is an integer (complex: real integer).
    bool is_integer() const;
    /// Requires is_integer().
    mpz_class to_integer() const;

    Scalar operator-() const;
    Scalar pow_int(long e) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    /// Equality within one backend (backend_mismatch across backends).
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_decimal_string(int digits) const;
    /// Lowest-terms "p/q" string; exact backend only.
    std::string exact_string() const;

    template <class Visitor>
    decltype(auto) visit(Visitor&& vis) const {
        return std::visit(std::forward<Visitor>(vis), v_);
    }

  private:
    std::variant<Rational, BigFloat, ComplexFloat> v_;
};

} // namespace epsexp
