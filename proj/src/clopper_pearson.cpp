#include "shapemetrics/clopper_pearson.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <stdexcept>

namespace shapemetrics {

Interval clopper_pearson(int successes, int n, double level) {
  if (n < 1 || successes < 0 || successes > n)
    throw std::invalid_argument("clopper_pearson: need 0 <= successes <= n and n >= 1");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("clopper_pearson: level must lie in (0, 1)");
  const double alpha = 1.0 - level;
  const double s = successes;
  const double f = n - successes;
  Interval ci;
  ci.low = successes == 0 ? 0.0 : boost::math::ibeta_inv(s, f + 1.0, alpha / 2.0);
  ci.high = successes == n ? 1.0 : boost::math::ibeta_inv(s + 1.0, f, 1.0 - alpha / 2.0);
  return ci;
}

}  // namespace shapemetrics
