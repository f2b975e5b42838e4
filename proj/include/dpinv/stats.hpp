#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dpinv {

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|; ties are
// handled by advancing both samples past equal values together.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

// Asymptotic two-sample critical value at significance `level`:
// sqrt(-ln(level / 2) / 2) * sqrt((n + m) / (n m)).
double ks_critical_value(double level, std::size_t n, std::size_t m);

// Type-7 (linear interpolation) sample quantile of already sorted values.
double sorted_quantile(std::span<const double> sorted, double q);

struct Interval {
  double lo;
  double hi;
  double level;
};

// Equal-tailed interval [(1 - level)/2, (1 + level)/2] of the values.
Interval equal_tailed_interval(std::vector<double> values, double level);

double mean_of(std::span<const double> values);
// Unbiased sample variance.
double variance_of(std::span<const double> values);

}  // namespace dpinv
