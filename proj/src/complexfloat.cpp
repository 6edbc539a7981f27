#include "epsexp/complexfloat.hpp"

namespace epsexp {

ComplexFloat::ComplexFloat(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
    mpfr_prec_t p = std::max(re_.precision(), im_.precision());
    if (re_.precision() != p) re_ = re_.round_to(p);
    if (im_.precision() != p) im_ = im_.round_to(p);
}

BigFloat ComplexFloat::abs() const {
    BigFloat r(0, precision());
    mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    return r;
}

ComplexFloat operator+(const ComplexFloat& a, const ComplexFloat& b) {
    return ComplexFloat(a.re_ + b.re_, a.im_ + b.im_);
}

ComplexFloat operator-(const ComplexFloat& a, const ComplexFloat& b) {
    return ComplexFloat(a.re_ - b.re_, a.im_ - b.im_);
}

ComplexFloat operator*(const ComplexFloat& a, const ComplexFloat& b) {
    return ComplexFloat(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

ComplexFloat operator/(const ComplexFloat& a, const ComplexFloat& b) {
    if (b.is_zero()) throw division_by_zero("complex division by zero");
    BigFloat d = b.re_ * b.re_ + b.im_ * b.im_;
    return ComplexFloat((a.re_ * b.re_ + a.im_ * b.im_) / d,
                        (a.im_ * b.re_ - a.re_ * b.im_) / d);
}

ComplexFloat ComplexFloat::pow_int(long e) const {
    if (e == 0) return ComplexFloat(1, precision());
    if (is_zero()) {
        if (e < 0) throw division_by_zero("zero raised to a negative power");
        return ComplexFloat(0, precision());
    }
    ComplexFloat base = *this;
    bool invert = e < 0;
    unsigned long ue = static_cast<unsigned long>(invert ? -e : e);
    ComplexFloat acc(1, precision());
    while (ue > 0) {
        if (ue & 1) acc *= base;
        base *= base;
        ue >>= 1;
    }
    if (invert) return ComplexFloat(1, precision()) / acc;
    return acc;
}

std::string ComplexFloat::decimal_string(int digits) const {
    if (im_.is_zero()) return re_.decimal_string(digits);
    std::string out = re_.decimal_string(digits);
    if (im_.sign() < 0) {
        out += " - " + (-im_).decimal_string(digits) + " i";
    } else {
        out += " + " + im_.decimal_string(digits) + " i";
    }
    return out;
}

} // namespace epsexp
