#include "dpinv/invariant_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dpinv/error.hpp"
#include "dpinv/parallel.hpp"

namespace dpinv {
namespace {

double sum_log(const ProbVector& theta) {
  double s = 0.0;
  for (double t : theta) s += std::log(t);
  return s;
}

void require_interior(const ProbVector& theta) {
  if (!theta.is_interior()) throw Error(ErrorCode::BoundaryPoint, "point on the simplex boundary");
}

// log |e^a - e^b|, -inf when a == b.
double log_abs_diff_exp(double a, double b) {
  if (a == b) return -std::numeric_limits<double>::infinity();
  const double hi = std::max(a, b);
  const double gap = std::abs(a - b);
  return hi + std::log(-std::expm1(-gap));
}

}  // namespace

double GeneralizedDensity::log_density(const ProbVector& theta) const {
  require_interior(theta);
  return log_eval(theta) + log_constant;
}

double dir0_log_density(const ProbVector& theta) {
  require_interior(theta);
  return -sum_log(theta);
}

GeneralizedDensity dir0_density() { return {"dir0", dir0_log_density, 0.0}; }

GeneralizedDensity uniform_density() {
  return {"uniform", [](const ProbVector&) { return 0.0; }, 0.0};
}

GeneralizedDensity power_density(std::vector<double> exponents) {
  return {"power",
          [a = std::move(exponents)](const ProbVector& theta) {
            if (a.size() != theta.size()) {
              throw Error(ErrorCode::DimensionMismatch, "exponent and point dimensions differ");
            }
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s -= a[i] * std::log(theta[i]);
            return s;
          },
          0.0};
}

GeneralizedDensity dirichlet_density(const DirichletParams& params) {
  return {"dirichlet", [params](const ProbVector& theta) { return log_pdf(params, theta); }, 0.0};
}

double functional_eq_log_residual(const GeneralizedDensity& pi, const GroupElement& g,
                                  const ProbVector& theta) {
  if (g.size() != theta.size()) {
    throw Error(ErrorCode::DimensionMismatch, "group element and point dimensions differ");
  }
  require_interior(theta);
  const double here = pi.log_density(theta);
  const ProbVector moved = apply(g, theta);
  return here - (pi.log_density(moved) + log_rn_derivative(g, theta));
}

double stability_envelope(double delta, const ProbVector& theta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::NonPositiveDelta, "delta must be positive");
  require_interior(theta);
  return std::exp(std::log(delta) + 1.0 / std::numbers::e - sum_log(theta));
}

ProbVector random_interior_point(std::size_t p, Philox& rng) {
  std::vector<double> e(p);
  for (;;) {
    for (double& x : e) x = -std::log(rng.uniform());
    ProbVector theta = make_prob_vector(e);
    if (theta.is_interior()) return theta;
  }
}

GroupElement random_group_element(std::size_t p, Philox& rng) {
  std::vector<double> c(p);
  for (double& x : c) x = std::exp(-2.0 + 4.0 * rng.uniform());
  return make_group_element(c);
}

std::string StabilityReport::status() const {
  if (!premise_met) return "premise not met";
  return conclusion_holds ? "pass" : "conclusion violated";
}

StabilityReport check_stability(const GeneralizedDensity& pi, std::size_t p, std::size_t trials,
                                double delta, std::uint64_t seed,
                                const StabilityOptions& options) {
  if (!(delta > 0.0)) throw Error(ErrorCode::NonPositiveDelta, "delta must be positive");
  if (p < 2) throw Error(ErrorCode::EmptyOrSingleton, "dimension must be at least 2");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");

  const double dim = static_cast<double>(p);
  const double k = options.reference_exponent;
  const ProbVector barycenter = make_prob_vector(std::vector<double>(p, 1.0));
  // pi_hat(theta) = pi(b) prod(b)^k / prod(theta)^k.
  const double fitted = pi.log_density(barycenter) - k * dim * std::log(dim);
  const double log_envelope_factor = std::log(delta) + 1.0 / std::numbers::e;

  std::vector<double> abs_log_residual(trials);
  std::vector<double> log_residual(trials);
  std::vector<double> log_ratio(trials);
  parallel_for(trials, [&](std::size_t t) {
    Philox rng = substream(seed, StreamTag::CheckTrial, options.stream, t);
    const ProbVector theta = random_interior_point(p, rng);
    const GroupElement g = random_group_element(p, rng);
    const double here = pi.log_density(theta);
    const double there = pi.log_density(apply(g, theta)) + log_rn_derivative(g, theta);
    abs_log_residual[t] = std::abs(here - there);
    log_residual[t] = log_abs_diff_exp(here, there);
    double log_prod = 0.0;
    for (double x : theta) log_prod += std::log(x);
    const double log_hat = fitted - k * log_prod;
    log_ratio[t] = log_abs_diff_exp(here, log_hat) - (log_envelope_factor - log_prod);
  });

  StabilityReport report;
  report.trials = trials;
  report.delta = delta;
  report.fitted_log_constant = fitted;
  report.max_abs_log_residual = *std::max_element(abs_log_residual.begin(), abs_log_residual.end());
  report.max_residual = std::exp(*std::max_element(log_residual.begin(), log_residual.end()));
  report.worst_envelope_ratio = std::exp(*std::max_element(log_ratio.begin(), log_ratio.end()));
  report.premise_met = report.max_residual < delta;
  report.conclusion_holds = report.worst_envelope_ratio < 1.0;
  report.pass = !report.premise_met || report.conclusion_holds;
  return report;
}

}  // namespace dpinv
