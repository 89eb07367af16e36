#pragma once

namespace shapemetrics {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Exact (Clopper-Pearson) binomial interval for `successes` out of `n`:
/// low = BetaInv(a/2; s, n-s+1) (0 when s = 0),
/// high = BetaInv(1-a/2; s+1, n-s) (1 when s = n), a = 1 - level.
/// Throws std::invalid_argument unless 0 <= s <= n, n >= 1, 0 < level < 1.
Interval clopper_pearson(int successes, int n, double level = 0.95);

}  // namespace shapemetrics
