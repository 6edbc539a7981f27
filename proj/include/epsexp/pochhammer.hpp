#pragma once

#include <string>
#include <vector>

#include "epsexp/field.hpp"
#include "epsexp/stirling.hpp"

namespace epsexp {

/// Harmonic number H_m = 1 + 1/2 + ... + 1/m (H_0 = 0).
Rational harmonic(int m);

inline mpz_class binomial_z(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline mpz_class factorial_z(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// Rising factorial (alpha)_m = alpha (alpha+1) ... (alpha+m-1).
template <class T>
T pochhammer(const T& alpha, int m) {
    if (m < 0) throw out_of_range_error("pochhammer needs m >= 0");
    T acc = Field<T>::from_long(1);
    T factor = alpha;
    for (int i = 0; i < m; ++i) {
        acc = acc * factor;
        factor = factor + Field<T>::from_long(1);
    }
    return acc;
}

/// k-th Taylor coefficient (1/k!) d^k/dalpha^k (alpha)_m, by the closed
/// form over Stirling numbers: sum_l (-1)^(m-k-l) C(m,l) s(m-l,k) (alpha)_l.
/// Zero for k > m.
template <class T>
T pochhammer_deriv(const T& alpha, int m, int k, const StirlingTable& table) {
    if (m < 0 || k < 0) throw out_of_range_error("pochhammer_deriv needs m, k >= 0");
    if (k > m) return Field<T>::from_long(0);
    if (table.n_max() < m) throw out_of_range_error("Stirling table too small for m = " + std::to_string(m));
    T acc = Field<T>::from_long(0);
    T rising = Field<T>::from_long(1); // (alpha)_l, updated incrementally
    for (int l = 0; l <= m - k; ++l) {
        mpz_class c = binomial_z(m, l) * table.at(m - l, k);
        if ((m - k - l) % 2 != 0) c = -c;
        acc = acc + Field<T>::from_integer(c) * rising;
        rising = rising * (alpha + Field<T>::from_long(l));
    }
    return acc;
}

/// Row state machine for the rising-factorial kernel: holds the vector
/// [P_m^(0), ..., P_m^(k_max)] and advances m by one step of
/// P_{m+1}^(k) = (alpha + m) P_m^(k) + P_m^(k-1).
template <class T>
class RisingRows {
  public:
    RisingRows(T alpha, int k_max) : alpha_(std::move(alpha)), m_(0) {
        if (k_max < 0) throw out_of_range_error("RisingRows needs k_max >= 0");
        row_.assign(static_cast<size_t>(k_max) + 1, Field<T>::from_long(0));
        row_[0] = Field<T>::from_long(1);
    }

    int m() const { return m_; }
    const std::vector<T>& row() const { return row_; }

    void advance() {
        T shift = alpha_ + Field<T>::from_long(m_);
        std::vector<T> next(row_.size(), Field<T>::from_long(0));
        next[0] = shift * row_[0];
        for (size_t k = 1; k < row_.size(); ++k) next[k] = shift * row_[k] + row_[k - 1];
        row_ = std::move(next);
        ++m_;
    }

  private:
    T alpha_;
    int m_;
    std::vector<T> row_;
};

template <class T>
std::vector<T> pochhammer_deriv_row(const T& alpha, int m, int k_max) {
    if (m < 0) throw out_of_range_error("pochhammer_deriv_row needs m >= 0");
    RisingRows<T> rows(alpha, k_max);
    for (int i = 0; i < m; ++i) rows.advance();
    return rows.row();
}

/// k-th Taylor coefficient of 1/(beta)_m, closed form: the partial
/// fraction expansion of 1/(beta)_m differentiated term by term,
///   (-1)^k sum_l (-1)^l / (l! (m-1-l)!) / (beta+l)^(k+1).
/// k = 0 uses the direct product.  Throws pole_at_beta when some
/// beta + l vanishes.
template <class T>
T recip_deriv(const T& beta, int m, int k) {
    if (m < 0 || k < 0) throw out_of_range_error("recip_deriv needs m, k >= 0");
    if (m == 0) return Field<T>::from_long(k == 0 ? 1 : 0);
    if (k == 0) {
        T prod = Field<T>::from_long(1);
        for (int l = 0; l < m; ++l) {
            T factor = beta + Field<T>::from_long(l);
            if (factor.is_zero())
                throw pole_at_beta("reciprocal Pochhammer pole at beta + " + std::to_string(l));
            prod = prod * factor;
        }
        return Field<T>::from_long(1) / prod;
    }
    T acc = Field<T>::from_long(0);
    for (int l = 0; l < m; ++l) {
        T shifted = beta + Field<T>::from_long(l);
        if (shifted.is_zero())
            throw pole_at_beta("reciprocal Pochhammer pole at beta + " + std::to_string(l));
        mpz_class c = factorial_z(l) * factorial_z(m - 1 - l);
        if (l % 2 != 0) c = -c;
        acc = acc + Field<T>::from_long(1) / (Field<T>::from_integer(c) * shifted.pow_int(k + 1));
    }
    if (k % 2 != 0) acc = -acc;
    return acc;
}

/// k-th Taylor coefficient of the regularized reciprocal 1/hat(beta)_m,
/// where hat omits the factor beta + N.  Defined for m >= N + 1.  The
/// k = 0 value is the direct product; for k >= 1 the partial fraction
/// coefficients pick up a factor (N - l).
template <class T>
T recip_deriv_regularized(int N, const T& beta, int m, int k) {
    if (N < 0 || k < 0) throw out_of_range_error("recip_deriv_regularized needs N, k >= 0");
    if (m < N + 1)
        throw out_of_range_error("recip_deriv_regularized needs m >= N + 1 (m = " +
                                 std::to_string(m) + ", N = " + std::to_string(N) + ")");
    if (k == 0) {
        T prod = Field<T>::from_long(1);
        for (int l = 0; l < m; ++l) {
            if (l == N) continue;
            T factor = beta + Field<T>::from_long(l);
            if (factor.is_zero())
                throw pole_at_beta("regularized reciprocal pole at beta + " + std::to_string(l));
            prod = prod * factor;
        }
        return Field<T>::from_long(1) / prod;
    }
    T acc = Field<T>::from_long(0);
    for (int l = 0; l < m; ++l) {
        if (l == N) continue;
        T shifted = beta + Field<T>::from_long(l);
        if (shifted.is_zero())
            throw pole_at_beta("regularized reciprocal pole at beta + " + std::to_string(l));
        mpz_class c = factorial_z(l) * factorial_z(m - 1 - l);
        if (l % 2 != 0) c = -c;
        acc = acc + Field<T>::from_integer(mpz_class(N - l)) /
                        (Field<T>::from_integer(c) * shifted.pow_int(k + 1));
    }
    if (k % 2 != 0) acc = -acc;
    return acc;
}

/// Row state machine for the reciprocal kernel: [Q_m^(0), ..., Q_m^(k_max)]
/// advancing by Q_{m+1}^(0) = Q_m^(0)/(beta+m),
/// Q_{m+1}^(k) = (Q_m^(k) - Q_{m+1}^(k-1))/(beta+m).  With a hat index N
/// the step m = N -> N+1 skips the vanishing factor: the row carries over
/// unchanged, which seeds the regularized recurrence.
template <class T>
class ReciprocalRows {
  public:
    ReciprocalRows(T beta, int k_max, int hat_index = -1)
        : beta_(std::move(beta)), hat_(hat_index), m_(0) {
        if (k_max < 0) throw out_of_range_error("ReciprocalRows needs k_max >= 0");
        row_.assign(static_cast<size_t>(k_max) + 1, Field<T>::from_long(0));
        row_[0] = Field<T>::from_long(1);
    }

    int m() const { return m_; }
    const std::vector<T>& row() const { return row_; }

    void advance() {
        if (hat_ >= 0 && m_ == hat_) {
            ++m_;
            return;
        }
        T divisor = beta_ + Field<T>::from_long(m_);
        if (divisor.is_zero())
            throw pole_at_beta("reciprocal Pochhammer pole at beta + " + std::to_string(m_));
        std::vector<T> next(row_.size(), Field<T>::from_long(0));
        next[0] = row_[0] / divisor;
        for (size_t k = 1; k < row_.size(); ++k) next[k] = (row_[k] - next[k - 1]) / divisor;
        row_ = std::move(next);
        ++m_;
    }

  private:
    T beta_;
    int hat_;
    int m_;
    std::vector<T> row_;
};

template <class T>
std::vector<T> recip_deriv_row(const T& beta, int m, int k_max) {
    if (m < 0) throw out_of_range_error("recip_deriv_row needs m >= 0");
    ReciprocalRows<T> rows(beta, k_max);
    for (int i = 0; i < m; ++i) rows.advance();
    return rows.row();
}

template <class T>
std::vector<T> recip_deriv_regularized_row(int N, const T& beta, int m, int k_max) {
    if (N < 0) throw out_of_range_error("recip_deriv_regularized_row needs N >= 0");
    if (m < N + 1)
        throw out_of_range_error("recip_deriv_regularized_row needs m >= N + 1");
    ReciprocalRows<T> rows(beta, k_max, N);
    for (int i = 0; i < m; ++i) rows.advance();
    return rows.row();
}

// Scalar-level wrappers (dispatch on the runtime backend).
Scalar pochhammer(const Scalar& alpha, int m);
Scalar pochhammer_deriv(const Scalar& alpha, int m, int k, const StirlingTable& table);
std::vector<Scalar> pochhammer_deriv_row(const Scalar& alpha, int m, int k_max);
Scalar recip_deriv(const Scalar& beta, int m, int k);
std::vector<Scalar> recip_deriv_row(const Scalar& beta, int m, int k_max);
Scalar recip_deriv_regularized(int N, const Scalar& beta, int m, int k);
std::vector<Scalar> recip_deriv_regularized_row(int N, const Scalar& beta, int m, int k_max);

} // namespace epsexp
