#include "epsexp/bigfloat.hpp"

#include <algorithm>

namespace epsexp {

namespace {
thread_local mpfr_prec_t g_default_prec = 256;

mpfr_prec_t pick(mpfr_prec_t prec) { return prec > 0 ? prec : g_default_prec; }
} // namespace

mpfr_prec_t BigFloat::default_precision() { return g_default_prec; }

void BigFloat::set_default_precision(mpfr_prec_t prec) {
    if (prec < MPFR_PREC_MIN) throw bad_request("precision below MPFR minimum");
    g_default_prec = prec;
}

BigFloat::PrecisionGuard::PrecisionGuard(mpfr_prec_t prec) : saved_(g_default_prec) {
    BigFloat::set_default_precision(prec);
}

BigFloat::PrecisionGuard::~PrecisionGuard() { g_default_prec = saved_; }

BigFloat::BigFloat() {
    mpfr_init2(v_, pick(0));
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, pick(prec));
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, mpfr_prec_t prec) {
    mpfr_init2(v_, pick(prec));
    mpfr_set_q(v_, q.value().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t prec) {
    BigFloat r(0, pick(prec));
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_string(const std::string& text, mpfr_prec_t prec) {
    BigFloat r(0, pick(prec));
    const char* s = text.c_str();
    char* end = nullptr;
    mpfr_strtofr(r.v_, s, &end, 10, MPFR_RNDN);
    if (end != s + text.size() || text.empty())
        throw parse_error("malformed float literal: '" + text + "'");
    return r;
}

BigFloat BigFloat::round_to(mpfr_prec_t prec) const {
    BigFloat r(0, pick(prec));
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

mpz_class BigFloat::to_integer() const {
    if (!is_integer()) throw bad_request("float is not an integer");
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
}

BigFloat BigFloat::operator-() const {
    BigFloat r(0, precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r(0, precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt() const {
    if (sign() < 0) throw bad_request("square root of a negative float");
    BigFloat r(0, precision());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

namespace {
mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
    return std::max(a.precision(), b.precision());
}
} // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw division_by_zero("float division by zero");
    BigFloat r(0, join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow_int(long e) const {
    if (is_zero() && e < 0) throw division_by_zero("zero raised to a negative power");
    BigFloat r(0, precision());
    mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
    return r;
}

std::string BigFloat::decimal_string(int digits) const {
    if (digits < 1) throw bad_request("decimal rendering needs at least 1 digit");
    if (is_zero()) {
        if (digits == 1) return "0";
        std::string out = "0.";
        out.append(static_cast<size_t>(digits - 1), '0');
        return out;
    }
    int fetch = std::max(digits, 2);
    mpfr_exp_t exp = 0;
    char* s = mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(fetch), v_, MPFR_RNDN);
    std::string ds(s);
    mpfr_free_str(s);
    bool neg = false;
    if (!ds.empty() && ds[0] == '-') {
        neg = true;
        ds.erase(0, 1);
    }
    long e10 = static_cast<long>(exp) - 1;
    if (static_cast<int>(ds.size()) > digits) {
        // only happens for digits == 1: round the 2-digit string by hand
        bool up = ds[1] >= '5';
        ds.resize(static_cast<size_t>(digits));
        if (up) {
            if (ds[0] == '9') {
                ds[0] = '1';
                ++e10;
            } else {
                ++ds[0];
            }
        }
    }
    return place_digits(neg, ds, e10, digits);
}

} // namespace epsexp
