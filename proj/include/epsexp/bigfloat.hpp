#pragma once

#include <mpfr.h>

#include <string>

#include "epsexp/rational.hpp"

namespace epsexp {

/// Arbitrary-precision binary float (MPFR, round-to-nearest-even).  Every
/// arithmetic operation rounds correctly to the larger of the two operand
/// precisions.  A thread-local default precision (initially 256 bits)
/// supplies the precision of constants created without an explicit one;
/// the engine scopes it to the precision of the active request.
class BigFloat {
  public:
    BigFloat();
    explicit BigFloat(long v, mpfr_prec_t prec = 0);
    explicit BigFloat(const Rational& q, mpfr_prec_t prec = 0);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat pi(mpfr_prec_t prec = 0);
    /// Parse decimal text ("1.5", "-2.25e-3") at the given precision.
    static BigFloat from_string(const std::string& text, mpfr_prec_t prec = 0);

    static mpfr_prec_t default_precision();
    static void set_default_precision(mpfr_prec_t prec);

    /// RAII scope for the thread-local default precision.
    class PrecisionGuard {
      public:
        explicit PrecisionGuard(mpfr_prec_t prec);
        ~PrecisionGuard();
        PrecisionGuard(const PrecisionGuard&) = delete;
        PrecisionGuard& operator=(const PrecisionGuard&) = delete;

      private:
        mpfr_prec_t saved_;
    };

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    /// Re-round this value to a new precision (returns a copy).
    BigFloat round_to(mpfr_prec_t prec) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    /// Requires is_integer().
    mpz_class to_integer() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    BigFloat operator-() const;
    BigFloat abs() const;
    BigFloat sqrt() const;

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    BigFloat pow_int(long e) const;

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

    /// Same rendering rules as Rational::decimal_string.
    std::string decimal_string(int digits) const;

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

  private:
    mpfr_t v_;
};

} // namespace epsexp
