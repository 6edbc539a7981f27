#include "epsexp/pochhammer.hpp"

namespace epsexp {

Rational harmonic(int m) {
    if (m < 0) throw out_of_range_error("harmonic needs m >= 0");
    Rational h(0);
    for (int i = 1; i <= m; ++i) h += Rational(1, i);
    return h;
}

namespace {

template <class F>
Scalar dispatch(const Scalar& s, F&& f) {
    return s.visit([&](const auto& v) { return Scalar(f(v)); });
}

template <class F>
std::vector<Scalar> dispatch_row(const Scalar& s, F&& f) {
    return s.visit([&](const auto& v) {
        auto row = f(v);
        std::vector<Scalar> out;
        out.reserve(row.size());
        for (auto& x : row) out.emplace_back(std::move(x));
        return out;
    });
}

} // namespace

Scalar pochhammer(const Scalar& alpha, int m) {
    return dispatch(alpha, [&](const auto& v) { return pochhammer(v, m); });
}

Scalar pochhammer_deriv(const Scalar& alpha, int m, int k, const StirlingTable& table) {
    return dispatch(alpha, [&](const auto& v) { return pochhammer_deriv(v, m, k, table); });
}

std::vector<Scalar> pochhammer_deriv_row(const Scalar& alpha, int m, int k_max) {
    return dispatch_row(alpha, [&](const auto& v) { return pochhammer_deriv_row(v, m, k_max); });
}

Scalar recip_deriv(const Scalar& beta, int m, int k) {
    return dispatch(beta, [&](const auto& v) { return recip_deriv(v, m, k); });
}

std::vector<Scalar> recip_deriv_row(const Scalar& beta, int m, int k_max) {
    return dispatch_row(beta, [&](const auto& v) { return recip_deriv_row(v, m, k_max); });
}

Scalar recip_deriv_regularized(int N, const Scalar& beta, int m, int k) {
    return dispatch(beta, [&](const auto& v) { return recip_deriv_regularized(N, v, m, k); });
}

std::vector<Scalar> recip_deriv_regularized_row(int N, const Scalar& beta, int m, int k_max) {
    return dispatch_row(beta, [&](const auto& v) { return recip_deriv_regularized_row(N, v, m, k_max); });
}

} // namespace epsexp
