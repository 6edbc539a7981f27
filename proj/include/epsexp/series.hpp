#pragma once

#include <vector>

#include "epsexp/field.hpp"

namespace epsexp {

/// Truncated Cauchy product: c[n] = sum_{j<=n} a[j] b[n-j] for n < len.
template <class T>
std::vector<T> conv_trunc(const std::vector<T>& a, const std::vector<T>& b, size_t len) {
    std::vector<T> c(len, Field<T>::from_long(0));
    for (size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j + i < len && j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    }
    return c;
}

/// Product of several coefficient vectors, truncated to their common
/// length.  All vectors must have the same length and backend.
std::vector<Scalar> combine_factors(const std::vector<std::vector<Scalar>>& factors);

/// Laurent expansion in eps: coefficients for orders
/// min_order, min_order + 1, ..., min_order + coefficients.size() - 1.
struct LaurentSeries {
    int min_order = 0;
    std::vector<Scalar> coefficients;

    int max_order() const { return min_order + static_cast<int>(coefficients.size()) - 1; }
    const Scalar& at(int order) const;
};

} // namespace epsexp
