#include "dpinv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpinv/error.hpp"

namespace dpinv {

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyData, "KS needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_critical_value(double level, std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return std::sqrt(-std::log(level / 2.0) / 2.0) * std::sqrt((nn + mm) / (nn * mm));
}

double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::EmptyData, "quantile of an empty sample");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Interval equal_tailed_interval(std::vector<double> values, double level) {
  std::sort(values.begin(), values.end());
  const double tail = (1.0 - level) / 2.0;
  return {sorted_quantile(values, tail), sorted_quantile(values, 1.0 - tail), level};
}

double mean_of(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyData, "mean of an empty sample");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double variance_of(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorCode::EmptyData, "variance needs two values");
  const double m = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return ss / static_cast<double>(values.size() - 1);
}

}  // namespace dpinv
