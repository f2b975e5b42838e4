#pragma once

// Serial, unfused reference implementations of the batched kernels. They
// build every draw explicitly and are kept for testing the parallel kernels
// and as the baseline of the benchmark.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpinv/dirichlet.hpp"
#include "dpinv/dirichlet_process.hpp"
#include "dpinv/inference.hpp"

namespace dpinv::reference {

std::vector<double> bayesian_bootstrap_functional(const EmpiricalCDF& ecdf, const Functional& f,
                                                  std::size_t draws, std::uint64_t seed,
                                                  std::uint64_t sub = 0);

std::vector<double> frequentist_bootstrap_functional(std::span<const double> data,
                                                     const Functional& f, std::size_t draws,
                                                     std::uint64_t seed);

DirichletDraws dirichlet_sample(const DirichletParams& params, std::uint64_t seed,
                                std::size_t draws);

std::vector<DiscreteCDFDraw> stick_breaking_batch(const DPParams& params, double truncation_tol,
                                                  std::uint64_t seed, std::size_t draws);

}  // namespace dpinv::reference
