#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dpinv/simplex.hpp"

namespace dpinv {

// Step CDF on sorted distinct atoms. When built from data, `counts` holds the
// multiplicities and masses are counts / total; weighted empirical bases leave
// counts empty.
struct EmpiricalCDF {
  std::vector<double> atoms;
  std::vector<double> masses;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t size() const noexcept { return atoms.size(); }
  bool has_counts() const noexcept { return !counts.empty(); }
  // Masses as a point of the simplex; empty for a single-atom CDF.
  std::optional<ProbVector> mass_vector() const;
};

// Ties are merged into one atom with multiplicity mass. Throws EmptyData or
// NonFinite.
EmpiricalCDF empirical_cdf(std::span<const double> data);

// Throws UnsortedEdges (atoms not strictly increasing), DimensionMismatch.
EmpiricalCDF weighted_empirical_cdf(std::vector<double> atoms, const ProbVector& masses);

class BaseCDF;

struct UniformBase {
  double lo;
  double hi;
};
struct GaussianBase {
  double location;
  double scale;
};
struct EmpiricalBase {
  EmpiricalCDF cdf;
  std::vector<double> cumulative;  // cumulative[i] = F(atoms[i]); last entry is 1
};
struct MixtureBase {
  ProbVector weights;
  std::vector<BaseCDF> components;
};

// A base measure F0 on the real line. Every variant supports cdf_at and its
// generalized inverse, which is the one sampling interface.
class BaseCDF {
 public:
  using Variant = std::variant<UniformBase, GaussianBase, EmpiricalBase, MixtureBase>;

  static BaseCDF uniform(double lo, double hi);
  static BaseCDF gaussian(double location, double scale);
  static BaseCDF empirical(EmpiricalCDF cdf);
  static BaseCDF mixture(ProbVector weights, std::vector<BaseCDF> components);

  const Variant& variant() const noexcept { return v_; }
  std::string kind() const;

  // Non-decreasing, right-continuous, limits 0 and 1.
  double cdf_at(double t) const;
  // inf { x : F(x) >= u } for u in (0, 1).
  double quantile(double u) const;
  // F0((a, b]).
  double interval_mass(double a, double b) const;

 private:
  explicit BaseCDF(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace dpinv
