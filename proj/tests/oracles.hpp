#pragma once

// Independent reference values for the tests. Nothing here calls into the
// library's samplers or special functions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

namespace oracle {

// Inverse-CDF draws from Beta(a, b) driven by std::mt19937_64.
inline std::vector<double> beta_draws(double a, double b, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) {
    double u = unif(gen);
    while (u <= 0.0) u = unif(gen);
    x = boost::math::ibeta_inv(a, b, u);
  }
  return out;
}

// Brute-force two-sample KS: sup over the pooled sample of |F_a - F_b|.
inline double ks_brute(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  double d = 0.0;
  for (double t : pooled) {
    const double fa = static_cast<double>(std::upper_bound(a.begin(), a.end(), t) - a.begin()) /
                      static_cast<double>(a.size());
    const double fb = static_cast<double>(std::upper_bound(b.begin(), b.end(), t) - b.begin()) /
                      static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

// 1% two-sample KS critical value, sqrt(-ln(0.005)/2) * sqrt((n+m)/(nm)).
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return 1.6276236307187293 * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace oracle
