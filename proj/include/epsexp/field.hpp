#pragma once

#include "epsexp/complexfloat.hpp"
#include "epsexp/rational.hpp"
#include "epsexp/scalar.hpp"

namespace epsexp {

/// Uniform construction and magnitude hooks for the three backend value
/// types, so kernel and engine code can be written once against a field
/// type T.  Float conversions use the thread-local default precision.
template <class T>
struct Field;

template <>
struct Field<Rational> {
    using Mag = Rational;
    static Rational from_long(long v) { return Rational(v); }
    static Rational from_integer(const mpz_class& z) { return Rational(z); }
    static Rational from_rational(const Rational& q) { return q; }
    static Rational magnitude(const Rational& v) { return v.abs(); }
    static Scalar to_scalar(const Rational& v) { return Scalar(v); }
    static const Rational& from_scalar(const Scalar& s) { return s.rational(); }
    static constexpr Backend backend = Backend::Exact;
};

template <>
struct Field<BigFloat> {
    using Mag = BigFloat;
    static BigFloat from_long(long v) { return BigFloat(v); }
    static BigFloat from_integer(const mpz_class& z) { return BigFloat(Rational(z)); }
    static BigFloat from_rational(const Rational& q) { return BigFloat(q); }
    static BigFloat magnitude(const BigFloat& v) { return v.abs(); }
    static Scalar to_scalar(const BigFloat& v) { return Scalar(v); }
    static const BigFloat& from_scalar(const Scalar& s) { return s.floating(); }
    static constexpr Backend backend = Backend::Float;
};

template <>
struct Field<ComplexFloat> {
    using Mag = BigFloat;
    static ComplexFloat from_long(long v) { return ComplexFloat(v); }
    static ComplexFloat from_integer(const mpz_class& z) { return ComplexFloat(Rational(z)); }
    static ComplexFloat from_rational(const Rational& q) { return ComplexFloat(q); }
    static BigFloat magnitude(const ComplexFloat& v) { return v.abs(); }
    static Scalar to_scalar(const ComplexFloat& v) { return Scalar(v); }
    static const ComplexFloat& from_scalar(const Scalar& s) { return s.complex_value(); }
    static constexpr Backend backend = Backend::Complex;
};

} // namespace epsexp
