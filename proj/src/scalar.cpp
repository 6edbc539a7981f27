#include "epsexp/scalar.hpp"

#include <cctype>

namespace epsexp {

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Exact: return "exact";
        case Backend::Float: return "float";
        case Backend::Complex: return "complex";
    }
    return "?";
}

Backend Scalar::backend() const {
    if (std::holds_alternative<Rational>(v_)) return Backend::Exact;
    if (std::holds_alternative<BigFloat>(v_)) return Backend::Float;
    return Backend::Complex;
}

Scalar Scalar::from_long(long v, Backend b, mpfr_prec_t prec) {
    switch (b) {
        case Backend::Exact: return Scalar(Rational(v));
        case Backend::Float: return Scalar(BigFloat(v, prec));
        case Backend::Complex: return Scalar(ComplexFloat(v, prec));
    }
    throw bad_request("unknown backend");
}

const Rational& Scalar::rational() const {
    if (auto* p = std::get_if<Rational>(&v_)) return *p;
    throw backend_mismatch("scalar is not exact");
}

const BigFloat& Scalar::floating() const {
    if (auto* p = std::get_if<BigFloat>(&v_)) return *p;
    throw backend_mismatch("scalar is not a float");
}

const ComplexFloat& Scalar::complex_value() const {
    if (auto* p = std::get_if<ComplexFloat>(&v_)) return *p;
    throw backend_mismatch("scalar is not complex");
}

bool Scalar::is_zero() const {
    return visit([](const auto& v) { return v.is_zero(); });
}

bool Scalar::is_integer() const {
    if (auto* p = std::get_if<ComplexFloat>(&v_)) return p->is_real() && p->real().is_integer();
    if (auto* p = std::get_if<BigFloat>(&v_)) return p->is_integer();
    return std::get<Rational>(v_).is_integer();
}

mpz_class Scalar::to_integer() const {
    if (auto* p = std::get_if<ComplexFloat>(&v_)) return p->real().to_integer();
    if (auto* p = std::get_if<BigFloat>(&v_)) return p->to_integer();
    return std::get<Rational>(v_).to_integer();
}

Scalar Scalar::operator-() const {
    return visit([](const auto& v) { return Scalar(-v); });
}

Scalar Scalar::pow_int(long e) const {
    return visit([&](const auto& v) { return Scalar(v.pow_int(e)); });
}

namespace {

template <class Op>
Scalar binary(const Scalar& a, const Scalar& b, Op op, const char* what) {
    if (a.backend() != b.backend())
        throw backend_mismatch(std::string(what) + " between " + backend_name(a.backend()) +
                               " and " + backend_name(b.backend()) + " scalars");
    switch (a.backend()) {
        case Backend::Exact: return Scalar(op(a.rational(), b.rational()));
        case Backend::Float: return Scalar(op(a.floating(), b.floating()));
        case Backend::Complex: return Scalar(op(a.complex_value(), b.complex_value()));
    }
    throw bad_request("unknown backend");
}

} // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x + y; }, "addition");
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x - y; }, "subtraction");
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x * y; }, "multiplication");
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x / y; }, "division");
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.backend() != b.backend())
        throw backend_mismatch("comparison between " + backend_name(a.backend()) + " and " +
                               backend_name(b.backend()) + " scalars");
    switch (a.backend()) {
        case Backend::Exact: return a.rational() == b.rational();
        case Backend::Float: return a.floating() == b.floating();
        case Backend::Complex: return a.complex_value() == b.complex_value();
    }
    throw bad_request("unknown backend");
}

std::string Scalar::to_decimal_string(int digits) const {
    return visit([&](const auto& v) { return v.decimal_string(digits); });
}

std::string Scalar::exact_string() const { return rational().str(); }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

struct LiteralParts {
    bool negative = false;
    bool imaginary = false;
    bool is_pi = false;
    long pi_divisor = 1;
    std::string body; // numeric text when !is_pi
    bool is_fraction = false;
    std::string num, den;
};

LiteralParts split_literal(std::string_view text) {
    LiteralParts out;
    std::string_view s = text;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        out.negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw parse_error("empty literal: '" + std::string(text) + "'");
    if (!s.empty() && s.back() == 'i' && s != "pi" && !(s.size() >= 2 && s.substr(0, 2) == "pi")) {
        out.imaginary = true;
        s.remove_suffix(1);
        if (s.empty()) throw parse_error("imaginary literal needs a coefficient: '" + std::string(text) + "'");
    }
    if (s == "pi" || (s.size() > 3 && s.substr(0, 3) == "pi/")) {
        out.is_pi = true;
        if (s != "pi") {
            std::string_view d = s.substr(3);
            if (!all_digits(d)) throw parse_error("malformed pi literal: '" + std::string(text) + "'");
            out.pi_divisor = std::stol(std::string(d));
            if (out.pi_divisor == 0) throw parse_error("pi with zero divisor: '" + std::string(text) + "'");
        }
        return out;
    }
    size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
        out.is_fraction = true;
        out.num = std::string(s.substr(0, slash));
        out.den = std::string(s.substr(slash + 1));
        if (!all_digits(out.num) || !all_digits(out.den))
            throw parse_error("malformed fraction literal: '" + std::string(text) + "'");
        return out;
    }
    out.body = std::string(s);
    return out;
}

Rational literal_rational(const LiteralParts& p, const std::string& original) {
    Rational r;
    if (p.is_fraction) {
        mpz_class num(p.num, 10), den(p.den, 10);
        if (den == 0) throw parse_error("fraction with zero denominator: '" + original + "'");
        mpq_class q(num, den);
        q.canonicalize();
        r = Rational(q);
    } else if (all_digits(p.body)) {
        r = Rational(mpz_class(p.body, 10));
    } else {
        r = rational_from_decimal(p.body);
    }
    if (p.negative) r = -r;
    return r;
}

} // namespace

Scalar Scalar::from_literal(std::string_view text, Backend b, mpfr_prec_t prec) {
    std::string original(text);
    LiteralParts p = split_literal(text);
    if (p.imaginary && b != Backend::Complex)
        throw parse_error("imaginary literal '" + original + "' requires the complex backend");
    if (p.is_pi) {
        if (b == Backend::Exact)
            throw pi_not_exact("pi-valued literal '" + original + "' has no exact representation");
        BigFloat v = BigFloat::pi(prec) / BigFloat(p.pi_divisor, prec);
        if (p.negative) v = -v;
        if (b == Backend::Float) return Scalar(std::move(v));
        if (p.imaginary) return Scalar(ComplexFloat(BigFloat(0, prec), std::move(v)));
        return Scalar(ComplexFloat(std::move(v)));
    }
    Rational r = literal_rational(p, original);
    switch (b) {
        case Backend::Exact: return Scalar(r);
        case Backend::Float: return Scalar(BigFloat(r, prec));
        case Backend::Complex:
            if (p.imaginary) return Scalar(ComplexFloat(BigFloat(0, prec), BigFloat(r, prec)));
            return Scalar(ComplexFloat(r, prec));
    }
    throw bad_request("unknown backend");
}

} // namespace epsexp
