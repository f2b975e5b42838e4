#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dpinv {

// Points with a component below this are treated as lying on the simplex
// boundary wherever a density or derivative must be evaluated.
inline constexpr double kBoundaryFloor = 1e-300;

// A point on the probability simplex S_p, p >= 2.
class ProbVector {
 public:
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }
  auto begin() const noexcept { return weights_.begin(); }
  auto end() const noexcept { return weights_.end(); }

  // True when every component is at least kBoundaryFloor.
  bool is_interior() const noexcept;

  friend bool operator==(const ProbVector&, const ProbVector&) = default;

 private:
  friend ProbVector make_prob_vector(std::span<const double>);
  explicit ProbVector(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

// Normalizes `values` onto the simplex. Throws EmptyOrSingleton, NegativeEntry,
// ZeroSum or NonFinite.
ProbVector make_prob_vector(std::span<const double> values);
inline ProbVector make_prob_vector(std::initializer_list<double> values) {
  return make_prob_vector(std::span<const double>(values.begin(), values.size()));
}

// Element of the rescale-and-renormalize group G_p acting on S_p. Scale
// vectors are only defined up to a positive multiple, so the element is kept
// in canonical form (scales summing to one); equal classes compare equal.
class GroupElement {
 public:
  std::size_t size() const noexcept { return scales_.size(); }
  double operator[](std::size_t i) const noexcept { return scales_[i]; }
  std::span<const double> scales() const noexcept { return scales_; }

  // All canonical scales equal: the map is the identity on S_p.
  bool is_identity() const noexcept;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  friend GroupElement make_group_element(std::span<const double>);
  explicit GroupElement(std::vector<double> s) : scales_(std::move(s)) {}
  std::vector<double> scales_;
};

// Throws EmptyOrSingleton, InvalidArgument (a scale <= 0) or NonFinite.
GroupElement make_group_element(std::span<const double> scales);
inline GroupElement make_group_element(std::initializer_list<double> scales) {
  return make_group_element(std::span<const double>(scales.begin(), scales.size()));
}

GroupElement identity_element(std::size_t p);

// theta_i -> c_i theta_i / sum_j c_j theta_j.
ProbVector apply(const GroupElement& g, const ProbVector& theta);

// compose(g1, g2) acts as g1 after g2.
GroupElement compose(const GroupElement& g1, const GroupElement& g2);

GroupElement inverse(const GroupElement& g);

// log of prod_i c_i / (sum_i c_i theta_i)^p, the Radon-Nikodym derivative of the
// pushed-forward Lebesgue measure. Exactly zero for the identity element.
double log_rn_derivative(const GroupElement& g, const ProbVector& theta);

// log |det J| of the map g in the chart (theta_1, ..., theta_{p-1}), with J
// from central differences of width `step`. Independent of log_rn_derivative;
// used to cross-check it. Requires every theta_i >= 10 * step and
// step in (0, 1e-3].
double numerical_log_jacobian(const GroupElement& g, const ProbVector& theta, double step);

}  // namespace dpinv
