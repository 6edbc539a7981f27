#include "epsexp/stirling.hpp"

#include <string>

namespace epsexp {

StirlingTable::StirlingTable(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw bad_request("StirlingTable needs n_max >= 0");
    flat_.resize(static_cast<size_t>(n_max + 1) * (n_max + 2) / 2);
    auto idx = [](int n, int k) { return static_cast<size_t>(n) * (n + 1) / 2 + k; };
    flat_[idx(0, 0)] = 1;
    for (int n = 0; n < n_max; ++n) {
        for (int k = 0; k <= n + 1; ++k) {
            mpz_class v = 0;
            if (k >= 1) v += flat_[idx(n, k - 1)];
            if (k <= n) v -= n * flat_[idx(n, k)];
            flat_[idx(n + 1, k)] = v;
        }
    }
}

const mpz_class& StirlingTable::at(int n, int k) const {
    if (n < 0 || n > n_max_ || k < 0 || k > n)
        throw out_of_range_error("Stirling index (" + std::to_string(n) + ", " +
                                 std::to_string(k) + ") outside table of size " +
                                 std::to_string(n_max_));
    return flat_[static_cast<size_t>(n) * (n + 1) / 2 + k];
}

} // namespace epsexp
