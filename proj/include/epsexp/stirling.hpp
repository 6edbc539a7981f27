#pragma once

#include <gmpxx.h>

#include <vector>

#include "epsexp/errors.hpp"

namespace epsexp {

/// Triangle of signed Stirling numbers of the first kind s(n, k),
/// 0 <= k <= n <= n_max, built once from the recurrence
/// s(n+1, k) = s(n, k-1) - n s(n, k) and immutable afterwards.
class StirlingTable {
  public:
    explicit StirlingTable(int n_max);

    int n_max() const { return n_max_; }
    /// s(n, k); throws out_of_range_error outside the triangle.
    const mpz_class& at(int n, int k) const;

  private:
    int n_max_;
    std::vector<mpz_class> flat_; // row n starts at n(n+1)/2
};

} // namespace epsexp
