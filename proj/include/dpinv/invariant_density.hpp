#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dpinv/dirichlet.hpp"
#include "dpinv/rng.hpp"
#include "dpinv/simplex.hpp"

namespace dpinv {

// A density known only up to a multiplicative constant. Two values that differ
// only in log_constant describe the same measure class.
struct GeneralizedDensity {
  std::string name;
  std::function<double(const ProbVector&)> log_eval;
  double log_constant = 0.0;

  // log_eval(theta) + log_constant; throws BoundaryPoint off the interior.
  double log_density(const ProbVector& theta) const;
};

// -sum_i log theta_i, the Dir(0) generalized density with constant zero.
double dir0_log_density(const ProbVector& theta);

GeneralizedDensity dir0_density();
GeneralizedDensity uniform_density();
// -sum_i a_i log theta_i; a == (1, ..., 1) recovers Dir(0).
GeneralizedDensity power_density(std::vector<double> exponents);
GeneralizedDensity dirichlet_density(const DirichletParams& params);

// log pi(theta) - [log pi(g theta) + log_rn_derivative(g, theta)]; zero where pi
// solves the invariance equation.
double functional_eq_log_residual(const GeneralizedDensity& pi, const GroupElement& g,
                                  const ProbVector& theta);

// delta * e^(1/e) / prod_i theta_i.
double stability_envelope(double delta, const ProbVector& theta);

// Draws used by every randomized invariance check: theta from the symmetric
// Dirichlet(1) on the interior of S_p and scales log-uniform on [e^-2, e^2].
ProbVector random_interior_point(std::size_t p, Philox& rng);
GroupElement random_group_element(std::size_t p, Philox& rng);

struct StabilityOptions {
  // Exponent k of the reference solution 1/prod(theta)^k; 1 is the exact
  // solution, anything else is a falsified control.
  double reference_exponent = 1.0;
  // Stream sub-index so different callers sharing a seed draw distinct cases.
  std::uint64_t stream = 0;
};

struct StabilityReport {
  std::size_t trials = 0;
  double delta = 0.0;
  double max_abs_log_residual = 0.0;
  double max_residual = 0.0;
  bool premise_met = false;
  bool conclusion_holds = false;
  // max over trials of |pi - pi_hat| / stability_envelope(delta, theta).
  double worst_envelope_ratio = 0.0;
  // log pi(barycenter) - p log p: the fitted log constant of pi_hat.
  double fitted_log_constant = 0.0;
  // Premise implies conclusion on every sampled case.
  bool pass = false;

  std::string status() const;
};

// Samples `trials` cases (g, theta) in S_p. If the largest non-log residual is
// below delta, verifies |pi - pi_hat| < stability_envelope(delta, theta) at
// every sampled theta, with pi_hat fitted to pi at the barycenter.
StabilityReport check_stability(const GeneralizedDensity& pi, std::size_t p, std::size_t trials,
                                double delta, std::uint64_t seed,
                                const StabilityOptions& options = {});

}  // namespace dpinv
