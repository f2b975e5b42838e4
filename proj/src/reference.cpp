#include "dpinv/reference.hpp"

#include "dpinv/error.hpp"

namespace dpinv::reference {

std::vector<double> bayesian_bootstrap_functional(const EmpiricalCDF& ecdf, const Functional& f,
                                                  std::size_t draws, std::uint64_t seed,
                                                  std::uint64_t sub) {
  const std::uint64_t n = ecdf.has_counts() ? ecdf.total : ecdf.size();
  std::vector<double> out;
  out.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    out.push_back(functional_of_draw(bayesian_bootstrap_draw(ecdf, n, seed, i, sub), f));
  }
  return out;
}

std::vector<double> frequentist_bootstrap_functional(std::span<const double> data,
                                                     const Functional& f, std::size_t draws,
                                                     std::uint64_t seed) {
  const std::size_t n = data.size();
  if (n == 0) throw Error(ErrorCode::EmptyData, "bootstrap needs data");
  std::vector<double> out;
  out.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    Philox rng = substream(seed, StreamTag::FrequentistBootstrap, 0, i);
    DiscreteCDFDraw resample;
    resample.atoms.reserve(n);
    for (std::size_t k = 0; k < n; ++k) resample.atoms.push_back(data[rng.below(n)]);
    resample.weights.assign(n, 1.0 / static_cast<double>(n));
    out.push_back(functional_of_draw(resample, f));
  }
  return out;
}

DirichletDraws dirichlet_sample(const DirichletParams& params, std::uint64_t seed,
                                std::size_t draws) {
  DirichletDraws out;
  out.draws.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    Philox rng = substream(seed, StreamTag::DirichletDraw, 0, i);
    out.draws.push_back(sample_one(params, rng, out.clamped));
  }
  return out;
}

std::vector<DiscreteCDFDraw> stick_breaking_batch(const DPParams& params, double truncation_tol,
                                                  std::uint64_t seed, std::size_t draws) {
  std::vector<DiscreteCDFDraw> out;
  out.reserve(draws);
  for (std::size_t i = 0; i < draws; ++i) {
    out.push_back(sample_stick_breaking(params, truncation_tol, seed, i));
  }
  return out;
}

}  // namespace dpinv::reference
