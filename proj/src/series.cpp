#include "epsexp/series.hpp"

#include <string>

namespace epsexp {

std::vector<Scalar> combine_factors(const std::vector<std::vector<Scalar>>& factors) {
    if (factors.empty()) throw bad_request("combine_factors needs at least one factor");
    size_t len = factors[0].size();
    if (len == 0) throw bad_request("combine_factors needs nonempty vectors");
    Backend b = factors[0][0].backend();
    for (const auto& f : factors) {
        if (f.size() != len) throw bad_request("combine_factors needs equal-length vectors");
        for (const auto& x : f)
            if (x.backend() != b)
                throw backend_mismatch("combine_factors vectors mix backends");
    }
    std::vector<Scalar> acc = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) {
        std::vector<Scalar> next(len, Scalar::from_long(0, b));
        for (size_t a = 0; a < len; ++a) {
            if (acc[a].is_zero()) continue;
            for (size_t c = 0; a + c < len; ++c) next[a + c] += acc[a] * factors[i][c];
        }
        acc = std::move(next);
    }
    return acc;
}

const Scalar& LaurentSeries::at(int order) const {
    if (order < min_order || order > max_order())
        throw out_of_range_error("Laurent order " + std::to_string(order) + " outside [" +
                                 std::to_string(min_order) + ", " + std::to_string(max_order()) + "]");
    return coefficients[static_cast<size_t>(order - min_order)];
}

} // namespace epsexp
