#include "epsexp/oracle.hpp"

#include <algorithm>
#include <string>

namespace epsexp {

namespace {

void check_same_backend(std::initializer_list<const Scalar*> xs) {
    const Scalar* first = *xs.begin();
    for (const Scalar* x : xs)
        if (x->backend() != first->backend())
            throw backend_mismatch("oracle inputs mix backends");
}

template <class T>
T coerce(const Scalar& s);

template <>
Rational coerce<Rational>(const Scalar& s) {
    return s.rational();
}

template <>
BigFloat coerce<BigFloat>(const Scalar& s) {
    if (s.backend() == Backend::Exact) return BigFloat(s.rational());
    return s.floating();
}

template <>
ComplexFloat coerce<ComplexFloat>(const Scalar& s) {
    switch (s.backend()) {
        case Backend::Exact: return ComplexFloat(s.rational());
        case Backend::Float: return ComplexFloat(s.floating());
        case Backend::Complex: return s.complex_value();
    }
    throw bad_request("unknown backend");
}

template <class T>
T direct_value_t(const std::vector<LinearParam>& upper, const std::vector<LinearParam>& lower,
                 const T& z, const T& eps, int M) {
    std::vector<T> up_c, low_c;
    for (const auto& p : upper)
        up_c.push_back(coerce<T>(p.constant) + coerce<T>(p.slope) * eps);
    for (const auto& p : lower)
        low_c.push_back(coerce<T>(p.constant) + coerce<T>(p.slope) * eps);
    std::vector<T> up_poch(up_c.size(), Field<T>::from_long(1));
    std::vector<T> low_poch(low_c.size(), Field<T>::from_long(1));
    T acc = Field<T>::from_long(1); // m = 0 term
    T zw = Field<T>::from_long(1);
    for (int m = 1; m <= M; ++m) {
        T shift = Field<T>::from_long(m - 1);
        for (size_t i = 0; i < up_c.size(); ++i) up_poch[i] = up_poch[i] * (up_c[i] + shift);
        for (size_t i = 0; i < low_c.size(); ++i) low_poch[i] = low_poch[i] * (low_c[i] + shift);
        zw = zw * z / Field<T>::from_long(m);
        T term = zw;
        for (const auto& v : up_poch) term = term * v;
        for (const auto& v : low_poch) term = term / v;
        acc = acc + term;
    }
    return acc;
}

} // namespace

Scalar direct_series_value(const std::vector<LinearParam>& upper,
                           const std::vector<LinearParam>& lower, const Scalar& z,
                           const Scalar& eps, int M) {
    if (M < 0) throw bad_request("direct_series_value needs M >= 0");
    check_same_backend({&z, &eps});
    switch (z.backend()) {
        case Backend::Exact:
            return Scalar(direct_value_t<Rational>(upper, lower, z.rational(), eps.rational(), M));
        case Backend::Float:
            return Scalar(direct_value_t<BigFloat>(upper, lower, z.floating(), eps.floating(), M));
        case Backend::Complex:
            return Scalar(
                direct_value_t<ComplexFloat>(upper, lower, z.complex_value(), eps.complex_value(), M));
    }
    throw bad_request("unknown backend");
}

template <class T>
std::vector<T> fd_weights(const std::vector<T>& x, int order) {
    size_t n = x.size();
    if (n == 0 || order < 0 || static_cast<size_t>(order) >= n)
        throw bad_request("fd_weights needs 0 <= order < node count");
    std::vector<std::vector<T>> c(
        n, std::vector<T>(static_cast<size_t>(order) + 1, Field<T>::from_long(0)));
    T c1 = Field<T>::from_long(1);
    T c4 = x[0];
    c[0][0] = Field<T>::from_long(1);
    for (size_t i = 1; i < n; ++i) {
        int mn = std::min<int>(static_cast<int>(i), order);
        T c2 = Field<T>::from_long(1);
        T c5 = c4;
        c4 = x[i];
        for (size_t j = 0; j < i; ++j) {
            T c3 = x[i] - x[j];
            c2 = c2 * c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][static_cast<size_t>(k)] =
                        c1 *
                        (Field<T>::from_long(k) * c[i - 1][static_cast<size_t>(k - 1)] -
                         c5 * c[i - 1][static_cast<size_t>(k)]) /
                        c2;
                c[i][0] = Field<T>::from_long(0) - c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][static_cast<size_t>(k)] =
                    (c4 * c[j][static_cast<size_t>(k)] -
                     Field<T>::from_long(k) * c[j][static_cast<size_t>(k - 1)]) /
                    c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<T> w;
    w.reserve(n);
    for (size_t j = 0; j < n; ++j) w.push_back(c[j][static_cast<size_t>(order)]);
    return w;
}

template std::vector<Rational> fd_weights<Rational>(const std::vector<Rational>&, int);
template std::vector<BigFloat> fd_weights<BigFloat>(const std::vector<BigFloat>&, int);
template std::vector<ComplexFloat> fd_weights<ComplexFloat>(const std::vector<ComplexFloat>&, int);

namespace {

template <class T>
std::vector<Scalar> fd_coeffs_t(const ExpansionRequest& req, const OracleConfig& config) {
    // cache f(j h) for j = -n_max .. n_max
    std::vector<T> values(static_cast<size_t>(2 * req.n_max + 1), Field<T>::from_long(0));
    T z = coerce<T>(req.z);
    for (int j = -req.n_max; j <= req.n_max; ++j) {
        Rational eps_q = Rational(j) * config.h;
        T eps = Field<T>::from_rational(eps_q);
        values[static_cast<size_t>(j + req.n_max)] =
            direct_value_t<T>(req.upper, req.lower, z, eps, config.M);
    }
    std::vector<Scalar> out;
    for (int nd = 0; nd <= req.n_max; ++nd) {
        std::vector<T> nodes;
        for (int j = -nd; j <= nd; ++j)
            nodes.push_back(Field<T>::from_rational(Rational(j) * config.h));
        std::vector<T> w = fd_weights(nodes, nd);
        T acc = Field<T>::from_long(0);
        for (int j = -nd; j <= nd; ++j)
            acc = acc + w[static_cast<size_t>(j + nd)] * values[static_cast<size_t>(j + req.n_max)];
        acc = acc / Field<T>::from_integer(factorial_z(nd));
        out.push_back(Field<T>::to_scalar(acc));
    }
    return out;
}

} // namespace

std::vector<Scalar> finite_difference_coeffs(const ExpansionRequest& req,
                                             const OracleConfig& config) {
    if (config.M < 1) throw bad_request("oracle truncation must be >= 1");
    if (config.precision < 128)
        throw bad_request("finite differences need at least 128 bits of precision");
    if (!(config.h > Rational(0)) || !(config.h < Rational(1)))
        throw bad_request("finite-difference step must satisfy 0 < h < 1");
    if (req.n_max < 0) throw bad_request("n_max must be >= 0");
    for (const auto& c : classify_lower(req.lower))
        if (c.kind == LowerKind::Singular)
            throw bad_request("finite differences need regular lower parameters");
    BigFloat::PrecisionGuard guard(config.precision);
    if (req.backend == Backend::Complex) return fd_coeffs_t<ComplexFloat>(req, config);
    return fd_coeffs_t<BigFloat>(req, config);
}

Scalar polylog(int s, const Scalar& z, int M) {
    if (M < 0) throw bad_request("polylog needs M >= 0");
    Backend b = z.backend();
    Scalar acc = Scalar::from_long(0, b);
    Scalar zw = Scalar::from_long(1, b);
    for (int m = 1; m <= M; ++m) {
        zw = zw * z;
        Scalar denom = Scalar::from_long(m, b).pow_int(s);
        acc += zw / denom;
    }
    return acc;
}

Scalar nielsen_s12(const Scalar& z, int M) {
    if (M < 0) throw bad_request("nielsen_s12 needs M >= 0");
    Backend b = z.backend();
    Scalar acc = Scalar::from_long(0, b);
    Scalar zw = Scalar::from_long(1, b);
    Rational h(0); // H_{m-1}
    for (int m = 1; m <= M; ++m) {
        zw = zw * z;
        if (m > 1) h += Rational(1, m - 1);
        Scalar hs = b == Backend::Exact ? Scalar(h)
                    : b == Backend::Float ? Scalar(BigFloat(h))
                                          : Scalar(ComplexFloat(h));
        acc += zw * hs / Scalar::from_long(m, b).pow_int(2);
    }
    return acc;
}

std::pair<Scalar, Scalar> gauss_c2_c3_reference(const Scalar& a1, const Scalar& a2,
                                                const Scalar& b1, const Scalar& z, int M) {
    check_same_backend({&a1, &a2, &b1, &z});
    Scalar li2 = polylog(2, z, M);
    Scalar li3 = polylog(3, z, M);
    Scalar s12 = nielsen_s12(z, M);
    Scalar c2 = a1 * a2 * li2;
    Scalar c3 = a1 * a2 * ((a1 + a2 - b1) * s12 - b1 * li3);
    return {c2, c3};
}

namespace {

template <class T>
T appell_ref_t(int n, const T& x1, const T& x2, int M) {
    std::vector<Rational> H(static_cast<size_t>(M) + 1), H2(static_cast<size_t>(M) + 1);
    for (int m = 1; m <= M; ++m) {
        H[static_cast<size_t>(m)] = H[static_cast<size_t>(m - 1)] + Rational(1, m);
        H2[static_cast<size_t>(m)] = H2[static_cast<size_t>(m - 1)] + Rational(1, m) * Rational(1, m);
    }
    std::vector<T> p1(static_cast<size_t>(M) + 1), p2(static_cast<size_t>(M) + 1);
    p1[0] = Field<T>::from_long(1);
    p2[0] = Field<T>::from_long(1);
    for (int m = 1; m <= M; ++m) {
        p1[static_cast<size_t>(m)] = p1[static_cast<size_t>(m - 1)] * x1;
        p2[static_cast<size_t>(m)] = p2[static_cast<size_t>(m - 1)] * x2;
    }
    T acc = Field<T>::from_long(0);
    for (int s = 0; s <= M; ++s) {
        for (int m1 = 0; m1 <= s; ++m1) {
            int m2 = s - m1;
            Rational bracket(1);
            if (n >= 1) {
                Rational d = H[static_cast<size_t>(s)] - H[static_cast<size_t>(m1)] -
                             H[static_cast<size_t>(m2)];
                if (n == 1) {
                    bracket = d;
                } else {
                    Rational q = H2[static_cast<size_t>(s)] - H2[static_cast<size_t>(m1)] -
                                 H2[static_cast<size_t>(m2)];
                    bracket = (d * d - q) / Rational(2);
                }
            }
            mpz_class cb = binomial_z(s, m1);
            Rational coeff = Rational(mpz_class(cb * cb)) * bracket;
            if (coeff.is_zero()) continue;
            acc = acc + Field<T>::from_rational(coeff) * p1[static_cast<size_t>(m1)] *
                            p2[static_cast<size_t>(m2)];
        }
    }
    return acc;
}

} // namespace

Scalar appell_c_reference(int n, const Scalar& x1, const Scalar& x2, int M) {
    if (n < 0 || n > 2) throw bad_request("appell_c_reference covers n = 0, 1, 2");
    if (M < 0) throw bad_request("appell_c_reference needs M >= 0");
    check_same_backend({&x1, &x2});
    switch (x1.backend()) {
        case Backend::Exact:
            return Scalar(appell_ref_t<Rational>(n, x1.rational(), x2.rational(), M));
        case Backend::Float:
            return Scalar(appell_ref_t<BigFloat>(n, x1.floating(), x2.floating(), M));
        case Backend::Complex:
            return Scalar(appell_ref_t<ComplexFloat>(n, x1.complex_value(), x2.complex_value(), M));
    }
    throw bad_request("unknown backend");
}

namespace {

BigFloat magnitude_of(const Scalar& s) {
    switch (s.backend()) {
        case Backend::Exact: return BigFloat(s.rational()).abs();
        case Backend::Float: return s.floating().abs();
        case Backend::Complex: return s.complex_value().abs();
    }
    throw bad_request("unknown backend");
}

} // namespace

double digits_agreement(const Scalar& a, const Scalar& b) {
    BigFloat delta = magnitude_of(a - b);
    if (delta.is_zero()) return 1e9;
    BigFloat ref = magnitude_of(b);
    // against an exact zero, relative digits are meaningless; count the
    // digits of smallness of a instead
    BigFloat rel = ref.is_zero() ? delta : delta / ref;
    BigFloat lg(0, rel.precision());
    mpfr_log10(lg.raw(), rel.raw(), MPFR_RNDN);
    return -lg.to_double();
}

} // namespace epsexp
