#pragma once

#include <utility>
#include <vector>

#include "epsexp/pochhammer.hpp"
#include "epsexp/series.hpp"

namespace epsexp {

/// Parameter linear in eps: constant + slope * eps.
struct LinearParam {
    Scalar constant;
    Scalar slope;
};

enum class LowerKind { Regular, Singular };

struct LowerClassification {
    LowerKind kind = LowerKind::Regular;
    int threshold = -1; // N with constant == -N; set for Singular only
};

/// Classify lower parameters: a constant part equal to a nonpositive
/// integer -N makes the parameter singular (its Pochhammer symbol
/// vanishes once m exceeds N).  Singular parameters must carry a nonzero
/// slope; otherwise the pole cannot be regularized and unresolvable_pole
/// is thrown.
std::vector<LowerClassification> classify_lower(const std::vector<LinearParam>& lower);

struct TruncationPolicy {
    enum class Mode { Fixed, Adaptive } mode = Mode::Fixed;
    int m = 0;        // Fixed: truncation order M
    int m_start = 16; // Adaptive: first round
    Scalar tol;       //           round-to-round tolerance
    int m_cap = 8192; //           hard cap

    static TruncationPolicy fixed(int M) {
        TruncationPolicy p;
        p.mode = Mode::Fixed;
        p.m = M;
        return p;
    }
    static TruncationPolicy adaptive(int m_start, Scalar tol, int m_cap) {
        TruncationPolicy p;
        p.mode = Mode::Adaptive;
        p.m_start = m_start;
        p.tol = std::move(tol);
        p.m_cap = m_cap;
        return p;
    }
};

struct ExpansionRequest {
    std::vector<LinearParam> upper, lower;
    Scalar z;
    int n_max = 0;
    TruncationPolicy truncation;
    Backend backend = Backend::Exact;
    mpfr_prec_t precision = 256;
    bool formal = false; // skip convergence-domain checks
};

struct Appell4Request {
    std::vector<LinearParam> upper, lower; // two of each
    Scalar x1, x2;
    int n_max = 0;
    TruncationPolicy truncation;
    Backend backend = Backend::Exact;
    mpfr_prec_t precision = 256;
    bool formal = false;
};

struct ExpansionOutcome {
    LaurentSeries series;
    int m_used = 0;
    bool coincident_thresholds = false;
};

enum class FactorRole { Upper, Lower, LowerRegularized };

/// Derivative vector of one series factor at summation index m: entry k is
/// slope^k times the k-th kernel value of the constant part.  Uppers use
/// the rising-factorial kernel, lowers the (optionally regularized)
/// reciprocal kernel; hat_index gives N for LowerRegularized.
std::vector<Scalar> factor_vector(const LinearParam& p, int m, int len, FactorRole role,
                                  int hat_index = -1);

/// Laurent expansion of the generalized hypergeometric series in eps.
ExpansionOutcome expand_pfq(const ExpansionRequest& req);

/// Laurent (here: Taylor) expansion of the fourth Appell function.
ExpansionOutcome expand_appell_f4(const Appell4Request& req);

/// Adaptive entry point: doubles M from m_start and stops once every
/// coefficient's round-to-round change is below tol; reports the first
/// truncation order verified sufficient as m_used.  Requires an Adaptive
/// policy.
ExpansionOutcome run_adaptive(const ExpansionRequest& req);

namespace detail {

template <class T>
struct ParamT {
    T constant, slope;
};

/// Truncated-sum state for pFq, extensible in M so adaptive rounds reuse
/// earlier work.  Carries Taylor orders 0..n_max+r and maps the term at
/// summation index m into Laurent orders shifted down by the number of
/// singular thresholds below m.
template <class T>
class PfqCore {
  public:
    PfqCore(std::vector<ParamT<T>> upper, std::vector<ParamT<T>> lower,
            std::vector<int> sing_pos_sorted, std::vector<int> sing_thresholds_sorted, T z,
            int n_max)
        : upper_(std::move(upper)),
          lower_(std::move(lower)),
          sing_pos_(std::move(sing_pos_sorted)),
          sing_n_(std::move(sing_thresholds_sorted)),
          z_(std::move(z)),
          n_max_(n_max),
          r_(static_cast<int>(sing_pos_.size())),
          len_(static_cast<size_t>(n_max + 1 + static_cast<int>(sing_pos_.size()))),
          laurent_(len_, Field<T>::from_long(0)),
          zterm_(Field<T>::from_long(1)),
          inv_bprod_(Field<T>::from_long(1)) {
        for (const auto& u : upper_) {
            upper_rows_.emplace_back(u.constant, static_cast<int>(len_) - 1);
            spow_.push_back(powers(u.slope));
        }
        for (size_t i = 0; i < lower_.size(); ++i) {
            int hat = -1;
            for (size_t s = 0; s < sing_pos_.size(); ++s)
                if (sing_pos_[s] == static_cast<int>(i)) hat = sing_n_[s];
            lower_rows_.emplace_back(lower_[i].constant, static_cast<int>(len_) - 1, hat);
            spow_.push_back(powers(lower_[i].slope));
        }
        accumulate();
    }

    int m() const { return m_; }
    int min_order() const { return -r_; }
    const std::vector<T>& laurent() const { return laurent_; }

    void extend_to(int M) {
        while (m_ < M) {
            for (auto& rows : upper_rows_) rows.advance();
            for (auto& rows : lower_rows_) rows.advance();
            ++m_;
            zterm_ = zterm_ * z_ / Field<T>::from_long(m_);
            while (engaged_ < r_ && sing_n_[engaged_] < m_) {
                inv_bprod_ = inv_bprod_ / lower_[sing_pos_[engaged_]].slope;
                ++engaged_;
            }
            accumulate();
        }
    }

  private:
    std::vector<T> powers(const T& s) const {
        std::vector<T> p(len_, Field<T>::from_long(0));
        p[0] = Field<T>::from_long(1);
        for (size_t k = 1; k < len_; ++k) p[k] = p[k - 1] * s;
        return p;
    }

    std::vector<T> scaled(const std::vector<T>& row, const std::vector<T>& pow) const {
        std::vector<T> v(len_, Field<T>::from_long(0));
        for (size_t k = 0; k < len_; ++k) v[k] = pow[k] * row[k];
        return v;
    }

    void accumulate() {
        std::vector<T> acc(len_, Field<T>::from_long(0));
        acc[0] = Field<T>::from_long(1);
        size_t f = 0;
        for (const auto& rows : upper_rows_) acc = conv_trunc(acc, scaled(rows.row(), spow_[f++]), len_);
        for (const auto& rows : lower_rows_) acc = conv_trunc(acc, scaled(rows.row(), spow_[f++]), len_);
        T w = zterm_ * inv_bprod_;
        for (int t = 0; t <= n_max_ + engaged_; ++t) {
            size_t idx = static_cast<size_t>(t - engaged_ + r_);
            laurent_[idx] = laurent_[idx] + w * acc[static_cast<size_t>(t)];
        }
    }

    std::vector<ParamT<T>> upper_, lower_;
    std::vector<int> sing_pos_, sing_n_;
    T z_;
    int n_max_;
    int r_;
    size_t len_;
    std::vector<RisingRows<T>> upper_rows_;
    std::vector<ReciprocalRows<T>> lower_rows_;
    std::vector<std::vector<T>> spow_; // uppers first, then lowers
    std::vector<T> laurent_;
    T zterm_; // z^m / m!
    T inv_bprod_;
    int m_ = 0;
    int engaged_ = 0;
};

/// Truncated-sum state for the fourth Appell function over the triangle
/// m1 + m2 <= M.  The two upper kernels depend on m1 + m2 only, so their
/// convolved vector is shared across a diagonal.
template <class T>
class AppellCore {
  public:
    AppellCore(std::vector<ParamT<T>> upper, std::vector<ParamT<T>> lower, T x1, T x2, int n_max)
        : upper_(std::move(upper)),
          lower_(std::move(lower)),
          x1_(std::move(x1)),
          x2_(std::move(x2)),
          n_max_(n_max),
          len_(static_cast<size_t>(n_max) + 1),
          laurent_(len_, Field<T>::from_long(0)) {
        for (const auto& u : upper_) {
            upper_rows_.emplace_back(u.constant, n_max_);
            spow_.push_back(powers(u.slope));
        }
        for (const auto& l : lower_) {
            lower_iters_.emplace_back(l.constant, n_max_);
            spow_.push_back(powers(l.slope));
        }
        lower_stored_[0].push_back(scaled(lower_iters_[0].row(), spow_[2]));
        lower_stored_[1].push_back(scaled(lower_iters_[1].row(), spow_[3]));
        xw1_.push_back(Field<T>::from_long(1));
        xw2_.push_back(Field<T>::from_long(1));
        add_diagonal(0);
    }

    int m() const { return s_; }
    const std::vector<T>& laurent() const { return laurent_; }

    void extend_to(int M) {
        while (s_ < M) {
            ++s_;
            for (auto& rows : upper_rows_) rows.advance();
            for (int side = 0; side < 2; ++side) {
                lower_iters_[side].advance();
                lower_stored_[side].push_back(
                    scaled(lower_iters_[side].row(), spow_[static_cast<size_t>(2 + side)]));
            }
            xw1_.push_back(xw1_.back() * x1_ / Field<T>::from_long(s_));
            xw2_.push_back(xw2_.back() * x2_ / Field<T>::from_long(s_));
            add_diagonal(s_);
        }
    }

  private:
    std::vector<T> powers(const T& s) const {
        std::vector<T> p(len_, Field<T>::from_long(0));
        p[0] = Field<T>::from_long(1);
        for (size_t k = 1; k < len_; ++k) p[k] = p[k - 1] * s;
        return p;
    }

    std::vector<T> scaled(const std::vector<T>& row, const std::vector<T>& pow) const {
        std::vector<T> v(len_, Field<T>::from_long(0));
        for (size_t k = 0; k < len_; ++k) v[k] = pow[k] * row[k];
        return v;
    }

    void add_diagonal(int s) {
        std::vector<T> pp(len_, Field<T>::from_long(0));
        pp[0] = Field<T>::from_long(1);
        pp = conv_trunc(pp, scaled(upper_rows_[0].row(), spow_[0]), len_);
        pp = conv_trunc(pp, scaled(upper_rows_[1].row(), spow_[1]), len_);
        for (int m1 = 0; m1 <= s; ++m1) {
            int m2 = s - m1;
            std::vector<T> vec = conv_trunc(pp, lower_stored_[0][static_cast<size_t>(m1)], len_);
            vec = conv_trunc(vec, lower_stored_[1][static_cast<size_t>(m2)], len_);
            T w = xw1_[static_cast<size_t>(m1)] * xw2_[static_cast<size_t>(m2)];
            for (size_t t = 0; t < len_; ++t) laurent_[t] = laurent_[t] + w * vec[t];
        }
    }

    std::vector<ParamT<T>> upper_, lower_;
    T x1_, x2_;
    int n_max_;
    size_t len_;
    std::vector<RisingRows<T>> upper_rows_;
    std::vector<ReciprocalRows<T>> lower_iters_;
    std::vector<std::vector<T>> lower_stored_[2]; // per m1 / m2, slope-scaled
    std::vector<std::vector<T>> spow_;
    std::vector<T> xw1_, xw2_; // x^m / m!
    std::vector<T> laurent_;
    int s_ = 0;
};

} // namespace detail

} // namespace epsexp
