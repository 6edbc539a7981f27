#pragma once

#include <utility>
#include <vector>

#include "epsexp/engine.hpp"

namespace epsexp {

/// Settings for the independent checks: truncation of the direct sums,
/// working precision of float evaluations, and the finite-difference
/// step.
struct OracleConfig {
    int M = 200;
    mpfr_prec_t precision = 256;
    Rational h = Rational(1, 1000000000000L); // 1e-12
};

/// Truncated series value at a concrete eps: sum_{m<=M} z^m/m! x
/// prod (A_i + a_i eps)_m / prod (B_j + b_j eps)_m.  No expansion
/// machinery involved; poles of the lower factors at this eps surface as
/// division errors.
Scalar direct_series_value(const std::vector<LinearParam>& upper,
                           const std::vector<LinearParam>& lower, const Scalar& z,
                           const Scalar& eps, int M);

/// Taylor coefficients 0..n_max of the request's function by symmetric
/// finite differences in eps (order n uses a 2n+1-point stencil of step
/// h).  Works in float (or complex) arithmetic at config.precision; an
/// exact request is coerced to float.  Requires every lower parameter to
/// be regular.
std::vector<Scalar> finite_difference_coeffs(const ExpansionRequest& req,
                                             const OracleConfig& config);

/// Partial sum of the polylogarithm Li_s(z) = sum z^m / m^s, m = 1..M.
Scalar polylog(int s, const Scalar& z, int M);

/// Partial sum of the Nielsen polylogarithm S_{1,2}(z) =
/// sum z^m H_{m-1} / m^2, m = 1..M.
Scalar nielsen_s12(const Scalar& z, int M);

/// Closed-form eps^2 and eps^3 coefficients of
/// 2F1(a1 eps, a2 eps; 1 + b1 eps; z), as partial sums truncated at M so
/// they can be compared exactly against the engine at the same
/// truncation:  C2 = a1 a2 Li2,  C3 = a1 a2 [-b1 Li3 + (a1+a2-b1) S12].
std::pair<Scalar, Scalar> gauss_c2_c3_reference(const Scalar& a1, const Scalar& a2,
                                                const Scalar& b1, const Scalar& z, int M);

/// Literal double-sum eps^n coefficient (n = 0, 1, 2) of the fourth
/// Appell function F4(1, 1+eps; 1+eps, 1+eps; x1, x2) truncated at
/// m1 + m2 <= M:
///   sum C(s,m1)^2 x1^m1 x2^m2 * bracket_n,  s = m1 + m2,
/// with bracket_1 = H_s - H_m1 - H_m2 and bracket_2 its second-order
/// analogue from exponentiating the harmonic-number series.
Scalar appell_c_reference(int n, const Scalar& x1, const Scalar& x2, int M);

/// Approximate number of agreeing significant digits between two scalars
/// of one backend: -log10(|a-b| / |b|), or -log10(|a|) when the reference
/// b is zero.  Returns a large value (1e9) for exact agreement.
double digits_agreement(const Scalar& a, const Scalar& b);

/// Finite-difference weights at evaluation point 0 for the given
/// derivative order over arbitrary distinct nodes.
template <class T>
std::vector<T> fd_weights(const std::vector<T>& nodes, int order);

} // namespace epsexp
