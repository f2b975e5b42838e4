#include "dpinv/kernels.hpp"

#include <algorithm>

#include "dpinv/error.hpp"
#include "dpinv/parallel.hpp"
#include "dpinv/variates.hpp"

namespace dpinv::kernels {

std::vector<double> bayesian_bootstrap_functional(const EmpiricalCDF& ecdf, const Functional& f,
                                                  std::size_t draws, std::uint64_t seed,
                                                  std::uint64_t sub) {
  if (ecdf.size() == 0) throw Error(ErrorCode::EmptyData, "empty empirical CDF");
  const std::uint64_t n = ecdf.has_counts() ? ecdf.total : ecdf.size();
  const std::vector<double> shapes = bootstrap_concentrations(ecdf, n);
  const std::span<const double> atoms = ecdf.atoms;
  std::vector<double> out(draws);

  const bool all_unit = std::all_of(shapes.begin(), shapes.end(), [](double a) { return a == 1.0; });
  if (f.kind() == Functional::Kind::Mean && all_unit) {
    // Distinct observations: every weight is a standard exponential.
    parallel_for(draws, [&](std::size_t i) {
      SplitMixStream rng = bulk_substream(seed, StreamTag::BayesianBootstrap, sub, i);
      double weighted = 0.0;
      double total = 0.0;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        const double g = standard_exponential(rng);
        weighted += g * atoms[k];
        total += g;
      }
      out[i] = weighted / total;
    });
    return out;
  }

  if (f.kind() == Functional::Kind::Mean) {
    parallel_for(draws, [&](std::size_t i) {
      SplitMixStream rng = bulk_substream(seed, StreamTag::BayesianBootstrap, sub, i);
      double weighted = 0.0;
      double total = 0.0;
      for (std::size_t k = 0; k < shapes.size(); ++k) {
        const double g = gamma_variate(shapes[k], rng);
        weighted += g * atoms[k];
        total += g;
      }
      out[i] = weighted / total;
    });
    return out;
  }

  parallel_for(draws, [&](std::size_t i) {
    SplitMixStream rng = bulk_substream(seed, StreamTag::BayesianBootstrap, sub, i);
    std::vector<double> weights(shapes.size());
    for (std::size_t k = 0; k < shapes.size(); ++k) weights[k] = gamma_variate(shapes[k], rng);
    out[i] = functional_of_weights(atoms, weights, f, /*atoms_sorted=*/true);
  });
  return out;
}

std::vector<double> frequentist_bootstrap_functional(std::span<const double> data,
                                                     const Functional& f, std::size_t draws,
                                                     std::uint64_t seed) {
  const std::size_t n = data.size();
  if (n == 0) throw Error(ErrorCode::EmptyData, "bootstrap needs data");
  std::vector<double> out(draws);

  if (f.kind() == Functional::Kind::Mean) {
    parallel_for(draws, [&](std::size_t i) {
      Philox rng = substream(seed, StreamTag::FrequentistBootstrap, 0, i);
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += data[rng.below(n)];
      out[i] = s / static_cast<double>(n);
    });
    return out;
  }

  // Map each observation to its atom so a resample becomes a count vector.
  const EmpiricalCDF ecdf = empirical_cdf(data);
  std::vector<std::size_t> atom_of(n);
  for (std::size_t k = 0; k < n; ++k) {
    atom_of[k] = static_cast<std::size_t>(
        std::lower_bound(ecdf.atoms.begin(), ecdf.atoms.end(), data[k]) - ecdf.atoms.begin());
  }
  parallel_for(draws, [&](std::size_t i) {
    Philox rng = substream(seed, StreamTag::FrequentistBootstrap, 0, i);
    std::vector<double> counts(ecdf.size(), 0.0);
    for (std::size_t k = 0; k < n; ++k) counts[atom_of[rng.below(n)]] += 1.0;
    out[i] = functional_of_weights(ecdf.atoms, counts, f, /*atoms_sorted=*/true);
  });
  return out;
}

std::vector<double> process_functional(const DPParams& params, const Functional& f,
                                       double truncation_tol, std::size_t draws,
                                       std::uint64_t seed, std::uint64_t sub) {
  std::vector<double> out(draws);
  parallel_for(draws, [&](std::size_t i) {
    out[i] = functional_of_draw(sample_process(params, truncation_tol, seed, i, sub), f);
  });
  return out;
}

}  // namespace dpinv::kernels
