#pragma once

#include <vector>

#include "olsc/rng.hpp"
#include "olsc/simplex.hpp"

namespace olsc::testutil {

inline SimplexPoint random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& v : w) {
    v = uniform01(rng) + 1e-6;
    sum += v;
  }
  for (double& v : w) v /= sum;
  return SimplexPoint(std::move(w));
}

inline LossVector random_loss(Rng& rng, std::size_t n) {
  std::vector<double> l(n);
  for (double& v : l) v = uniform01(rng);
  return LossVector(std::move(l));
}

// 0.999 quantiles of the chi-square distribution for the small degrees of
// freedom used by the marginal-preservation tests.
inline double chisq_crit_999(int df) {
  switch (df) {
    case 1: return 10.8276;
    case 2: return 13.8155;
    case 3: return 16.2662;
    case 4: return 18.4668;
    case 5: return 20.5150;
    case 6: return 22.4577;
    case 7: return 24.3219;
    default: return 2.0 * df;  // not used
  }
}

}  // namespace olsc::testutil
