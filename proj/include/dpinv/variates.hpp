#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>

#include "dpinv/rng.hpp"

// Variates are templates over the generator: anything with operator()
// returning 64 random bits and uniform() on (0, 1) (Philox, SplitMixStream).
namespace dpinv {

namespace detail {

// 256-layer ziggurat for exp(-x) (Marsaglia and Tsang). x[0] is the base
// strip's pseudo-width v / f(r); x[256] = 0.
struct ExpZiggurat {
  static constexpr double r = 7.69711747013104972;
  static constexpr double v = 0.0039496598225815571993;
  std::array<double, 257> x{};
  std::array<double, 257> f{};
  ExpZiggurat() noexcept;
};

extern const ExpZiggurat kExpZiggurat;

inline double ziggurat_abscissa(std::uint64_t bits, std::size_t layer) noexcept {
  // bits >> 11 < 2^53, so the signed conversion is exact and cheap.
  const double u = static_cast<double>(static_cast<std::int64_t>(bits >> 11)) * 0x1.0p-53 +
                   0x1.0p-54;
  return u * kExpZiggurat.x[layer];
}

template <class Rng>
[[gnu::noinline, gnu::cold]] double exponential_slow(Rng& rng, std::size_t layer, double x) {
  const ExpZiggurat& z = kExpZiggurat;
  for (;;) {
    if (layer == 0) return ExpZiggurat::r - std::log(rng.uniform());
    if (z.f[layer + 1] + (z.f[layer] - z.f[layer + 1]) * rng.uniform() < std::exp(-x)) return x;
    const std::uint64_t bits = rng();
    layer = bits & 0xFF;
    x = ziggurat_abscissa(bits, layer);
    if (x < z.x[layer + 1]) return x;
  }
}

}  // namespace detail

template <class Rng>
double standard_normal(Rng& rng) noexcept {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <class Rng>
inline double standard_exponential(Rng& rng) noexcept {
  const std::uint64_t bits = rng();
  const std::size_t layer = bits & 0xFF;
  const double x = detail::ziggurat_abscissa(bits, layer);
  if (x < detail::kExpZiggurat.x[layer + 1]) [[likely]]
    return x;
  return detail::exponential_slow(rng, layer, x);
}

// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang; shape == 1 is exponential).
template <class Rng>
double gamma_variate(double shape, Rng& rng) noexcept {
  if (shape == 1.0) return standard_exponential(rng);
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// log of a Gamma(shape, 1) variate, valid for any shape > 0. Shapes below one
// use G(a) = G(a + 1) * U^(1/a) evaluated in log space, so tiny shapes never
// underflow to log(0).
template <class Rng>
double log_gamma_variate(double shape, Rng& rng) noexcept {
  if (shape >= 1.0) return std::log(gamma_variate(shape, rng));
  const double boosted = std::log(gamma_variate(shape + 1.0, rng));
  return boosted + std::log(rng.uniform()) / shape;
}

}  // namespace dpinv
