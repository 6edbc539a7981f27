#pragma once

#include <string>

#include "epsexp/bigfloat.hpp"

namespace epsexp {

/// Complex number over BigFloat.  Real and imaginary parts always share
/// one precision; mixing precisions promotes both to the larger.
class ComplexFloat {
  public:
    ComplexFloat() : re_(), im_() {}
    explicit ComplexFloat(long v, mpfr_prec_t prec = 0) : re_(v, prec), im_(0, prec) {}
    explicit ComplexFloat(const Rational& q, mpfr_prec_t prec = 0) : re_(q, prec), im_(0, prec) {}
    explicit ComplexFloat(BigFloat re) : re_(std::move(re)), im_(0, re_.precision()) {}
    ComplexFloat(BigFloat re, BigFloat im);

    const BigFloat& real() const { return re_; }
    const BigFloat& imag() const { return im_; }
    mpfr_prec_t precision() const { return re_.precision(); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    ComplexFloat operator-() const { return ComplexFloat(-re_, -im_); }
    ComplexFloat conj() const { return ComplexFloat(re_, -im_); }
    /// Modulus |z| as a real BigFloat.
    BigFloat abs() const;

    friend ComplexFloat operator+(const ComplexFloat& a, const ComplexFloat& b);
    friend ComplexFloat operator-(const ComplexFloat& a, const ComplexFloat& b);
    friend ComplexFloat operator*(const ComplexFloat& a, const ComplexFloat& b);
    friend ComplexFloat operator/(const ComplexFloat& a, const ComplexFloat& b);
    ComplexFloat& operator+=(const ComplexFloat& o) { return *this = *this + o; }
    ComplexFloat& operator-=(const ComplexFloat& o) { return *this = *this - o; }
    ComplexFloat& operator*=(const ComplexFloat& o) { return *this = *this * o; }
    ComplexFloat& operator/=(const ComplexFloat& o) { return *this = *this / o; }

    ComplexFloat pow_int(long e) const;

    friend bool operator==(const ComplexFloat& a, const ComplexFloat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ComplexFloat& a, const ComplexFloat& b) { return !(a == b); }

    /// "re + im i" / "re - |im| i"; purely real values render as the real
    /// part alone.
    std::string decimal_string(int digits) const;

  private:
    BigFloat re_, im_;
};

} // namespace epsexp
