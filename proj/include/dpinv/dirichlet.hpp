#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpinv/rng.hpp"
#include "dpinv/simplex.hpp"

namespace dpinv {

// Dir(alpha, F0): concentration alpha > 0 and mean vector F0. The usual
// concentration vector is alpha * F0.
class DirichletParams {
 public:
  DirichletParams(double concentration, ProbVector mean);

  // Builds from a concentration vector a; alpha = sum(a), F0 = a / alpha. The
  // vector itself is kept verbatim so integer concentrations stay exact.
  static DirichletParams from_concentration_vector(std::span<const double> alpha_vec);

  double concentration() const noexcept { return concentration_; }
  const ProbVector& mean() const noexcept { return mean_; }
  std::span<const double> concentration_vector() const noexcept { return alpha_vec_; }
  std::size_t size() const noexcept { return mean_.size(); }

 private:
  DirichletParams(double concentration, ProbVector mean, std::vector<double> alpha_vec);

  double concentration_;
  ProbVector mean_;
  std::vector<double> alpha_vec_;
};

// log C_eps = log Gamma(alpha) - sum_i log Gamma(alpha F0_i).
double log_c_eps(const DirichletParams& params);

double log_pdf(const DirichletParams& params, const ProbVector& theta);

struct DirichletDraws {
  std::vector<ProbVector> draws;
  // Components that underflowed to zero and were raised to the smallest
  // positive double before normalization.
  std::size_t clamped = 0;
};

// Draw i comes from substream (seed, DirichletDraw, i), so the batch is
// identical for any worker count.
DirichletDraws sample(const DirichletParams& params, std::uint64_t seed, std::size_t draws);

// One draw from an explicit stream. `clamped` is incremented per clamped component.
ProbVector sample_one(const DirichletParams& params, Philox& rng, std::size_t& clamped);
ProbVector sample_one(std::span<const double> alpha_vec, Philox& rng, std::size_t& clamped);

struct InvarianceMargin {
  double c_eps;
  double log_c_eps;
  // c_eps * e^e, the bound on sup_theta C_eps e^e |prod theta_i^(eps F0_i) - 1|.
  double sup_margin;
  // c_eps * e^(1/e), the same bound with the stability-envelope constant.
  double stability_margin;
};

InvarianceMargin eps_invariance_margin(const DirichletParams& params);

}  // namespace dpinv
