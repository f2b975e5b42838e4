#include "dpinv/dirichlet.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "dpinv/error.hpp"
#include "dpinv/parallel.hpp"
#include "dpinv/variates.hpp"

namespace dpinv {

DirichletParams::DirichletParams(double concentration, ProbVector mean)
    : concentration_(concentration), mean_(std::move(mean)) {
  if (!(concentration_ > 0.0) || !std::isfinite(concentration_)) {
    throw Error(ErrorCode::NonPositiveConcentration, "concentration must be positive and finite");
  }
  alpha_vec_.reserve(mean_.size());
  for (double m : mean_) alpha_vec_.push_back(concentration_ * m);
}

DirichletParams::DirichletParams(double concentration, ProbVector mean,
                                 std::vector<double> alpha_vec)
    : concentration_(concentration), mean_(std::move(mean)), alpha_vec_(std::move(alpha_vec)) {}

DirichletParams DirichletParams::from_concentration_vector(std::span<const double> alpha_vec) {
  ProbVector mean = make_prob_vector(alpha_vec);
  double total = 0.0;
  for (double a : alpha_vec) total += a;
  return DirichletParams(total, std::move(mean), {alpha_vec.begin(), alpha_vec.end()});
}

double log_c_eps(const DirichletParams& params) {
  using boost::math::lgamma;
  double result = lgamma(params.concentration());
  for (double a : params.concentration_vector()) {
    if (a <= 0.0) throw Error(ErrorCode::ZeroMeanComponent, "Gamma(0) is undefined");
    result -= lgamma(a);
  }
  return result;
}

double log_pdf(const DirichletParams& params, const ProbVector& theta) {
  if (params.size() != theta.size()) {
    throw Error(ErrorCode::DimensionMismatch, "parameter and point dimensions differ");
  }
  if (!theta.is_interior()) throw Error(ErrorCode::BoundaryPoint, "density undefined on the boundary");
  double result = log_c_eps(params);
  const auto alpha_vec = params.concentration_vector();
  for (std::size_t i = 0; i < theta.size(); ++i) result += (alpha_vec[i] - 1.0) * std::log(theta[i]);
  return result;
}

ProbVector sample_one(std::span<const double> alpha_vec, Philox& rng, std::size_t& clamped) {
  std::vector<double> logs(alpha_vec.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (alpha_vec[i] <= 0.0) throw Error(ErrorCode::ZeroMeanComponent, "cannot sample a zero shape");
    logs[i] = log_gamma_variate(alpha_vec[i], rng);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  for (double& l : logs) {
    l = std::exp(l - top);
    if (l == 0.0) {
      l = std::numeric_limits<double>::denorm_min();
      ++clamped;
    }
  }
  return make_prob_vector(logs);
}

ProbVector sample_one(const DirichletParams& params, Philox& rng, std::size_t& clamped) {
  return sample_one(params.concentration_vector(), rng, clamped);
}

DirichletDraws sample(const DirichletParams& params, std::uint64_t seed, std::size_t draws) {
  std::vector<std::optional<ProbVector>> slots(draws);
  std::vector<std::size_t> clamps(draws, 0);
  parallel_for(draws, [&](std::size_t i) {
    Philox rng = substream(seed, StreamTag::DirichletDraw, 0, i);
    slots[i] = sample_one(params, rng, clamps[i]);
  });
  DirichletDraws out;
  out.draws.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    out.draws.push_back(std::move(*slots[i]));
    out.clamped += clamps[i];
  }
  return out;
}

InvarianceMargin eps_invariance_margin(const DirichletParams& params) {
  const double log_c = log_c_eps(params);
  const double c = std::exp(log_c);
  return {c, log_c, c * std::exp(std::numbers::e), c * std::exp(1.0 / std::numbers::e)};
}

}  // namespace dpinv
