#pragma once

#include <cstdint>
#include <vector>

#include "bba/core/measure.hpp"
#include "bba/core/random.hpp"

namespace bba::test {

inline Points random_points(long d, long n, Rng& rng, double lo = 0.0, double hi = 1.0) {
  Points p(d, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < d; ++j) p(j, i) = lo + (hi - lo) * uniform01(rng);
  return p;
}

inline Measured random_measure(long d, long n, Rng& rng) {
  Points p = random_points(d, n, rng);
  Eigen::VectorXd w(n);
  for (long i = 0; i < n; ++i) w(i) = 0.1 + uniform01(rng);
  return Measured(p, w);
}

inline Point vec(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

}  // namespace bba::test
