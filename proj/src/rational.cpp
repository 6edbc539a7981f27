#include "epsexp/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace epsexp {

Rational::Rational(long num, long den) {
    if (den == 0) throw division_by_zero("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

mpz_class Rational::to_integer() const {
    if (!is_integer()) throw bad_request("rational is not an integer: " + str());
    return v_.get_num();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw division_by_zero("exact division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
        if (e < 0) throw division_by_zero("zero raised to a negative power");
        return Rational(0);
    }
    mpz_class num, den;
    unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), ue);
    mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), ue);
    mpq_class r;
    if (e < 0) {
        r = mpq_class(den, num);
    } else {
        r = mpq_class(num, den);
    }
    r.canonicalize();
    return Rational(r);
}

namespace {

mpz_class pow10_z(unsigned long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

} // namespace

std::string place_digits(bool negative, const std::string& digits, long e10, int total_digits) {
    std::string out;
    if (negative) out.push_back('-');
    if (e10 > -6 && e10 < total_digits) {
        if (e10 >= 0) {
            out += digits.substr(0, static_cast<size_t>(e10) + 1);
            std::string frac = digits.substr(static_cast<size_t>(e10) + 1);
            if (!frac.empty()) {
                out.push_back('.');
                out += frac;
            }
        } else {
            out += "0.";
            out.append(static_cast<size_t>(-e10 - 1), '0');
            out += digits;
        }
    } else {
        out.push_back(digits[0]);
        if (digits.size() > 1) {
            out.push_back('.');
            out += digits.substr(1);
        }
        out.push_back('e');
        out += std::to_string(e10);
    }
    return out;
}

std::string Rational::decimal_string(int digits) const {
    if (digits < 1) throw bad_request("decimal rendering needs at least 1 digit");
    if (is_zero()) {
        std::string out = "0.";
        out.append(static_cast<size_t>(digits - 1), '0');
        return digits == 1 ? std::string("0") : out;
    }
    mpz_class a = ::abs(numerator());
    mpz_class b = denominator();

    // Decimal exponent e with 10^e <= a/b < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
    // sizeinbase may overestimate by one; settle by comparison.
    auto cmp_pow = [&](long k) {
        // sign of a/b - 10^k  ==  sign of a*10^max(0,-k) - b*10^max(0,k)
        mpz_class lhs = a, rhs = b;
        if (k >= 0) rhs *= pow10_z(static_cast<unsigned long>(k));
        else lhs *= pow10_z(static_cast<unsigned long>(-k));
        return cmp(lhs, rhs);
    };
    while (cmp_pow(e) < 0) --e;
    while (cmp_pow(e + 1) >= 0) ++e;

    // Round a/b * 10^(digits-1-e) to an integer, half to even.
    long scale = digits - 1 - e;
    mpz_class num = a, den = b;
    if (scale >= 0) num *= pow10_z(static_cast<unsigned long>(scale));
    else den *= pow10_z(static_cast<unsigned long>(-scale));
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class r2 = 2 * r;
    int c = cmp(r2, den);
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    std::string ds = q.get_str();
    if (static_cast<int>(ds.size()) > digits) {
        // rounding carried into a new leading digit (e.g. 999.. -> 1000..)
        ds.pop_back();
        ++e;
    }
    return place_digits(sign() < 0, ds, e, digits);
}

std::optional<std::string> Rational::exact_decimal_string(int max_sig_digits) const {
    if (is_zero()) return std::string("0");
    mpz_class den = denominator();
    unsigned long twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
    if (den != 1) return std::nullopt;
    // num / (2^a 5^b) == num * 2^(k-a) 5^(k-b) / 10^k  with k = max(a,b)
    unsigned long k = std::max(twos, fives);
    mpz_class scaled = ::abs(numerator());
    {
        mpz_class f2, f5;
        mpz_ui_pow_ui(f2.get_mpz_t(), 2, k - twos);
        mpz_ui_pow_ui(f5.get_mpz_t(), 5, k - fives);
        scaled *= f2 * f5;
    }
    std::string ds = scaled.get_str();
    while (k > 0 && !ds.empty() && ds.back() == '0') { ds.pop_back(); --k; }
    size_t sig = ds.size();
    {
        size_t lead = 0;
        while (lead < ds.size() && ds[lead] == '0') ++lead;
        sig = ds.size() - lead;
    }
    if (sig > static_cast<size_t>(max_sig_digits)) return std::nullopt;
    std::string out;
    if (sign() < 0) out.push_back('-');
    if (k == 0) {
        out += ds;
    } else if (ds.size() > k) {
        out += ds.substr(0, ds.size() - k);
        out.push_back('.');
        out += ds.substr(ds.size() - k);
    } else {
        out += "0.";
        out.append(k - ds.size(), '0');
        out += ds;
    }
    return out;
}

Rational rational_from_decimal(const std::string& text) {
    // [sign] digits [. digits] [ (e|E) [sign] digits ]
    size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    std::string int_part, frac_part;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) int_part.push_back(text[i++]);
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) frac_part.push_back(text[i++]);
    }
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        std::string ed;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ed.push_back(text[i++]);
        if (ed.empty()) throw parse_error("malformed exponent in decimal literal: '" + text + "'");
        exp10 = std::strtol(ed.c_str(), nullptr, 10);
        if (eneg) exp10 = -exp10;
    }
    if (i != text.size() || (int_part.empty() && frac_part.empty()))
        throw parse_error("malformed decimal literal: '" + text + "'");
    mpz_class digits_z(int_part + frac_part, 10);
    long shift = exp10 - static_cast<long>(frac_part.size());
    mpq_class v(digits_z);
    if (shift > 0) v *= mpq_class(pow10_z(static_cast<unsigned long>(shift)));
    else if (shift < 0) v /= mpq_class(pow10_z(static_cast<unsigned long>(-shift)));
    if (neg) v = -v;
    v.canonicalize();
    return Rational(v);
}

} // namespace epsexp
