#pragma once

// Batched posterior sampling kernels, parallel over draws. Draw i always uses
// the same counter-based substream, so every kernel returns bit-identical
// results for any worker count. Serial reference versions live in
// dpinv/reference.hpp.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpinv/base_cdf.hpp"
#include "dpinv/inference.hpp"

namespace dpinv::kernels {

// f of each DP(n, F_n) realization without materializing the draw for the
// mean. Matches functional_of_draw(bayesian_bootstrap_draw(ecdf, total, seed,
// i, sub), f) up to rounding.
std::vector<double> bayesian_bootstrap_functional(const EmpiricalCDF& ecdf, const Functional& f,
                                                  std::size_t draws, std::uint64_t seed,
                                                  std::uint64_t sub = 0);

// f of each resample with replacement; indices are drawn in data order.
std::vector<double> frequentist_bootstrap_functional(std::span<const double> data,
                                                     const Functional& f, std::size_t draws,
                                                     std::uint64_t seed);

// f of each draw of sample_process(params, tol, seed, i, sub).
std::vector<double> process_functional(const DPParams& params, const Functional& f,
                                       double truncation_tol, std::size_t draws,
                                       std::uint64_t seed, std::uint64_t sub = 0);

}  // namespace dpinv::kernels
