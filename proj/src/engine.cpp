#include "epsexp/engine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace epsexp {

namespace {

bool is_nonpositive_integer(const Scalar& s) {
    if (!s.is_integer()) return false;
    return s.to_integer() <= 0;
}

int singular_threshold(const Scalar& constant) {
    mpz_class n = -constant.to_integer();
    if (!n.fits_sint_p()) throw bad_request("singular threshold does not fit in an int");
    return static_cast<int>(n.get_si());
}

void check_backend(const Scalar& s, Backend b, const char* what) {
    if (s.backend() != b)
        throw backend_mismatch(std::string(what) + " is " + backend_name(s.backend()) +
                               " but the request backend is " + backend_name(b));
}

void check_params(const std::vector<LinearParam>& params, Backend b, const char* what) {
    for (const auto& p : params) {
        check_backend(p.constant, b, what);
        check_backend(p.slope, b, what);
    }
}

/// |v| < 1, in the arithmetic of v's backend (complex compares |v|^2).
bool abs_less_one(const Scalar& v) {
    switch (v.backend()) {
        case Backend::Exact: return v.rational().abs() < Rational(1);
        case Backend::Float: return v.floating().abs() < BigFloat(1);
        case Backend::Complex: {
            const auto& c = v.complex_value();
            BigFloat m2 = c.real() * c.real() + c.imag() * c.imag();
            return m2 < BigFloat(1);
        }
    }
    throw bad_request("unknown backend");
}

/// sqrt|x1| + sqrt|x2| < 1 without leaving the backend's arithmetic
/// (exact backend: squared form 4ab < (1-a-b)^2 with a+b < 1).
bool appell_domain_ok(const Scalar& x1, const Scalar& x2) {
    if (x1.backend() == Backend::Exact) {
        Rational a = x1.rational().abs();
        Rational b = x2.rational().abs();
        Rational rest = Rational(1) - a - b;
        if (rest <= Rational(0)) return false; // sqrt a + sqrt b >= sqrt(a+b) >= 1
        return Rational(4) * a * b < rest * rest;
    }
    BigFloat a = x1.backend() == Backend::Float ? x1.floating().abs() : x1.complex_value().abs();
    BigFloat b = x2.backend() == Backend::Float ? x2.floating().abs() : x2.complex_value().abs();
    return a.sqrt() + b.sqrt() < BigFloat(1);
}

void validate_truncation(const TruncationPolicy& t, Backend b) {
    if (t.mode == TruncationPolicy::Mode::Fixed) {
        if (t.m < 0) throw bad_request("fixed truncation needs M >= 0");
        return;
    }
    if (t.m_start < 8) throw bad_request("adaptive truncation needs m_start >= 8");
    if (t.m_cap < t.m_start) throw bad_request("adaptive truncation needs m_cap >= m_start");
    check_backend(t.tol, b, "tolerance");
    bool pos;
    switch (b) {
        case Backend::Exact: pos = t.tol.rational() > Rational(0); break;
        case Backend::Float: pos = t.tol.floating() > BigFloat(0); break;
        default: pos = t.tol.complex_value().is_real() && t.tol.complex_value().real() > BigFloat(0);
    }
    if (!pos) throw bad_request("adaptive truncation needs tol > 0");
}

/// Smallest K over eps-free upper parameters equal to -K, or -1 if none:
/// such a parameter terminates the series after m = K.
int terminating_order(const std::vector<LinearParam>& upper) {
    int best = -1;
    for (const auto& u : upper) {
        if (!u.slope.is_zero()) continue;
        if (!is_nonpositive_integer(u.constant)) continue;
        int K = singular_threshold(u.constant);
        if (best < 0 || K < best) best = K;
    }
    return best;
}

template <class T>
detail::ParamT<T> to_param(const LinearParam& p) {
    return {Field<T>::from_scalar(p.constant), Field<T>::from_scalar(p.slope)};
}

template <class T>
bool within_tol(const std::vector<T>& prev, const std::vector<T>& cur,
                const typename Field<T>::Mag& tol) {
    for (size_t i = 0; i < cur.size(); ++i) {
        auto delta = Field<T>::magnitude(cur[i] - prev[i]);
        auto mag = Field<T>::magnitude(cur[i]);
        if (mag < tol) {
            if (!(delta < tol)) return false;
        } else {
            if (!(delta < tol * mag)) return false;
        }
    }
    return true;
}

template <class T>
typename Field<T>::Mag tol_magnitude(const Scalar& tol) {
    return Field<T>::magnitude(Field<T>::from_scalar(tol));
}

std::vector<Scalar> to_scalars(const std::vector<Rational>& v) {
    return {v.begin(), v.end()};
}
std::vector<Scalar> to_scalars(const std::vector<BigFloat>& v) {
    return {v.begin(), v.end()};
}
std::vector<Scalar> to_scalars(const std::vector<ComplexFloat>& v) {
    return {v.begin(), v.end()};
}

/// Run a core (PfqCore or AppellCore) under a truncation policy.
/// Adaptive rounds double M; convergence is declared when a round agrees
/// with its doubled successor, and the verified (smaller) round is
/// reported.  clamp >= 0 caps the useful truncation of a terminating
/// series.
template <class T, class Core>
std::pair<std::vector<Scalar>, int> drive(Core& core, const TruncationPolicy& pol, int clamp) {
    auto effective = [&](int M) { return clamp >= 0 ? std::min(M, clamp) : M; };
    if (pol.mode == TruncationPolicy::Mode::Fixed) {
        core.extend_to(effective(pol.m));
        return {to_scalars(core.laurent()), core.m()};
    }
    auto tol = tol_magnitude<T>(pol.tol);
    int M_prev = effective(pol.m_start);
    core.extend_to(M_prev);
    std::vector<T> prev = core.laurent();
    int M = pol.m_start;
    while (M < pol.m_cap) {
        M = std::min(2 * M, pol.m_cap);
        core.extend_to(effective(M));
        const std::vector<T>& cur = core.laurent();
        if (within_tol<T>(prev, cur, tol)) return {to_scalars(prev), M_prev};
        prev = cur;
        M_prev = effective(M);
    }
    throw truncation_not_converged("adaptive truncation did not converge by M = " +
                                   std::to_string(pol.m_cap));
}

struct SingularLayout {
    std::vector<int> pos;        // indices into lower, sorted by threshold
    std::vector<int> thresholds; // aligned with pos
    bool coincident = false;
};

SingularLayout singular_layout(const std::vector<LowerClassification>& cls) {
    SingularLayout out;
    for (size_t i = 0; i < cls.size(); ++i)
        if (cls[i].kind == LowerKind::Singular) out.pos.push_back(static_cast<int>(i));
    std::stable_sort(out.pos.begin(), out.pos.end(), [&](int a, int b) {
        return cls[static_cast<size_t>(a)].threshold < cls[static_cast<size_t>(b)].threshold;
    });
    for (int p : out.pos) out.thresholds.push_back(cls[static_cast<size_t>(p)].threshold);
    for (size_t i = 1; i < out.thresholds.size(); ++i)
        if (out.thresholds[i] == out.thresholds[i - 1]) out.coincident = true;
    return out;
}

template <class T>
ExpansionOutcome expand_pfq_t(const ExpansionRequest& req, const SingularLayout& lay, int clamp) {
    std::vector<detail::ParamT<T>> upper, lower;
    for (const auto& p : req.upper) upper.push_back(to_param<T>(p));
    for (const auto& p : req.lower) lower.push_back(to_param<T>(p));
    detail::PfqCore<T> core(std::move(upper), std::move(lower), lay.pos, lay.thresholds,
                            Field<T>::from_scalar(req.z), req.n_max);
    auto [coeffs, m_used] = drive<T>(core, req.truncation, clamp);
    ExpansionOutcome out;
    out.series.min_order = core.min_order();
    out.series.coefficients = std::move(coeffs);
    out.m_used = m_used;
    out.coincident_thresholds = lay.coincident;
    return out;
}

template <class T>
ExpansionOutcome expand_appell_t(const Appell4Request& req) {
    std::vector<detail::ParamT<T>> upper, lower;
    for (const auto& p : req.upper) upper.push_back(to_param<T>(p));
    for (const auto& p : req.lower) lower.push_back(to_param<T>(p));
    detail::AppellCore<T> core(std::move(upper), std::move(lower), Field<T>::from_scalar(req.x1),
                               Field<T>::from_scalar(req.x2), req.n_max);
    auto [coeffs, m_used] = drive<T>(core, req.truncation, -1);
    ExpansionOutcome out;
    out.series.min_order = 0;
    out.series.coefficients = std::move(coeffs);
    out.m_used = m_used;
    return out;
}

} // namespace

std::vector<LowerClassification> classify_lower(const std::vector<LinearParam>& lower) {
    std::vector<LowerClassification> out;
    out.reserve(lower.size());
    for (const auto& p : lower) {
        LowerClassification c;
        if (is_nonpositive_integer(p.constant)) {
            if (p.slope.is_zero())
                throw unresolvable_pole("lower parameter " + p.constant.to_decimal_string(6) +
                                        " is a nonpositive integer with zero slope");
            c.kind = LowerKind::Singular;
            c.threshold = singular_threshold(p.constant);
        }
        out.push_back(c);
    }
    return out;
}

std::vector<Scalar> factor_vector(const LinearParam& p, int m, int len, FactorRole role,
                                  int hat_index) {
    if (len < 1) throw bad_request("factor_vector needs len >= 1");
    if (p.constant.backend() != p.slope.backend())
        throw backend_mismatch("factor_vector parameter mixes backends");
    std::vector<Scalar> row;
    switch (role) {
        case FactorRole::Upper: row = pochhammer_deriv_row(p.constant, m, len - 1); break;
        case FactorRole::Lower: row = recip_deriv_row(p.constant, m, len - 1); break;
        case FactorRole::LowerRegularized:
            row = recip_deriv_regularized_row(hat_index, p.constant, m, len - 1);
            break;
    }
    Scalar sp = Scalar::from_long(1, p.slope.backend());
    for (int k = 0; k < len; ++k) {
        row[static_cast<size_t>(k)] = sp * row[static_cast<size_t>(k)];
        sp = sp * p.slope;
    }
    return row;
}

ExpansionOutcome expand_pfq(const ExpansionRequest& req) {
    if (req.n_max < 0) throw bad_request("n_max must be >= 0");
    check_params(req.upper, req.backend, "an upper parameter");
    check_params(req.lower, req.backend, "a lower parameter");
    check_backend(req.z, req.backend, "z");
    validate_truncation(req.truncation, req.backend);
    if (req.backend != Backend::Exact && req.precision < 64)
        throw bad_request("float precision must be at least 64 bits");

    auto cls = classify_lower(req.lower);
    SingularLayout lay = singular_layout(cls);
    int clamp = terminating_order(req.upper);

    size_t p = req.upper.size(), q = req.lower.size();
    if (!req.formal && clamp < 0) {
        if (p > q + 1)
            throw divergent_series("non-terminating series with p > q + 1 diverges");
        if (p == q + 1 && !abs_less_one(req.z))
            throw divergent_series("series with p = q + 1 needs |z| < 1");
    }

    BigFloat::PrecisionGuard guard(req.backend == Backend::Exact ? BigFloat::default_precision()
                                                                 : req.precision);
    switch (req.backend) {
        case Backend::Exact: return expand_pfq_t<Rational>(req, lay, clamp);
        case Backend::Float: return expand_pfq_t<BigFloat>(req, lay, clamp);
        case Backend::Complex: return expand_pfq_t<ComplexFloat>(req, lay, clamp);
    }
    throw bad_request("unknown backend");
}

ExpansionOutcome run_adaptive(const ExpansionRequest& req) {
    if (req.truncation.mode != TruncationPolicy::Mode::Adaptive)
        throw bad_request("run_adaptive needs an Adaptive truncation policy");
    return expand_pfq(req);
}

ExpansionOutcome expand_appell_f4(const Appell4Request& req) {
    if (req.n_max < 0) throw bad_request("n_max must be >= 0");
    if (req.upper.size() != 2 || req.lower.size() != 2)
        throw bad_request("Appell F4 takes exactly two upper and two lower parameters");
    check_params(req.upper, req.backend, "an upper parameter");
    check_params(req.lower, req.backend, "a lower parameter");
    check_backend(req.x1, req.backend, "x1");
    check_backend(req.x2, req.backend, "x2");
    validate_truncation(req.truncation, req.backend);
    if (req.backend != Backend::Exact && req.precision < 64)
        throw bad_request("float precision must be at least 64 bits");

    auto cls = classify_lower(req.lower); // throws on zero-slope singulars
    for (const auto& c : cls)
        if (c.kind == LowerKind::Singular)
            throw bad_request("Appell F4 with singular lower parameters is not supported");

    if (!req.formal && !appell_domain_ok(req.x1, req.x2))
        throw divergent_series("Appell F4 needs sqrt|x1| + sqrt|x2| < 1");

    BigFloat::PrecisionGuard guard(req.backend == Backend::Exact ? BigFloat::default_precision()
                                                                 : req.precision);
    switch (req.backend) {
        case Backend::Exact: return expand_appell_t<Rational>(req);
        case Backend::Float: return expand_appell_t<BigFloat>(req);
        case Backend::Complex: return expand_appell_t<ComplexFloat>(req);
    }
    throw bad_request("unknown backend");
}

} // namespace epsexp
