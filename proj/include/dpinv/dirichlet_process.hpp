#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpinv/base_cdf.hpp"
#include "dpinv/dirichlet.hpp"
#include "dpinv/rng.hpp"

namespace dpinv {

inline constexpr double kDefaultTruncationTol = 1e-8;

// DP(alpha, F0).
struct DPParams {
  double concentration;
  BaseCDF base;

  DPParams(double concentration, BaseCDF base);
};

// A realization F = sum_k w_k delta(atom_k) of the process. Stick-breaking
// leaves truncation_mass unassigned, so sum(weights) + truncation_mass == 1.
struct DiscreteCDFDraw {
  std::vector<double> atoms;
  std::vector<double> weights;
  double truncation_mass = 0.0;

  double total_weight() const noexcept;
};

// DP(eps + n, eps/(eps+n) F0 + n/(eps+n) F_n) for data of size n.
DPParams posterior_update(const DPParams& prior, std::span<const double> data);

// Cells (-inf, e_1], (e_1, e_2], ..., (e_k, inf). Returns the Dirichlet law of
// the cell masses: concentration alpha and mean F0(cell). Throws
// UnsortedEdges or ZeroMassCell.
DirichletParams finite_marginal(const DPParams& params, std::span<const double> partition_edges);

// Sethuraman's construction: v_k ~ Beta(1, alpha), atoms from the base by
// inverse CDF, stopping once the unassigned mass drops below truncation_tol.
// The draw comes from substream (seed, StickBreaking, index).
DiscreteCDFDraw sample_stick_breaking(const DPParams& params, double truncation_tol,
                                      std::uint64_t seed, std::uint64_t index = 0,
                                      std::uint64_t sub = 0);

std::vector<DiscreteCDFDraw> sample_stick_breaking_batch(const DPParams& params,
                                                         double truncation_tol,
                                                         std::uint64_t seed, std::size_t draws);

// Exact draw from DP(n, F_n): Dirichlet weights with concentration n * mass on
// the empirical atoms, no truncation. Throws InconsistentCount when n * mass
// is not a positive integer for some atom. The weights come from the bulk
// stream keyed by substream (seed, BayesianBootstrap, sub, index); `sub`
// separates independent callers
// such as the two arms of an experiment.
DiscreteCDFDraw bayesian_bootstrap_draw(const EmpiricalCDF& ecdf, std::uint64_t n,
                                        std::uint64_t seed, std::uint64_t index = 0,
                                        std::uint64_t sub = 0);

// Integer Dirichlet concentrations n * mass used by bayesian_bootstrap_draw.
std::vector<double> bootstrap_concentrations(const EmpiricalCDF& ecdf, std::uint64_t n);

// Draw from DP(alpha, F0) using the exact finite law when the base is
// empirical and stick-breaking otherwise.
DiscreteCDFDraw sample_process(const DPParams& params, double truncation_tol, std::uint64_t seed,
                               std::uint64_t index = 0, std::uint64_t sub = 0);

struct ProcessBoundEntry {
  double eps;
  std::size_t p;
  double log_c_eps;
  double c_eps;
};

struct ProcessBoundReport {
  std::vector<ProcessBoundEntry> entries;
  // Smallest K with C_eps <= K * eps over the whole grid.
  double k_bound = 0.0;
  // K restricted to each p; uniformity means the overall K covers them all.
  std::vector<double> k_per_p;
  bool monotone_in_eps = false;
  bool nonincreasing_in_p = false;
  // C_{eps/2} <= C_eps / 2 for every adjacent pair (eps, eps/2) present in the grid.
  bool halving_ok = true;
  bool pass = false;
};

// C_eps with F0 uniform over p cells for every (eps, p) in the grids.
ProcessBoundReport process_invariance_bound(std::span<const double> eps_grid,
                                            std::span<const std::size_t> p_grid);

}  // namespace dpinv
