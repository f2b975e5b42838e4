#include "dpinv/dirichlet_process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpinv/error.hpp"
#include "dpinv/parallel.hpp"
#include "dpinv/variates.hpp"

namespace dpinv {

DPParams::DPParams(double concentration_, BaseCDF base_)
    : concentration(concentration_), base(std::move(base_)) {
  if (!(concentration > 0.0) || !std::isfinite(concentration)) {
    throw Error(ErrorCode::NonPositiveConcentration, "DP concentration must be positive and finite");
  }
}

double DiscreteCDFDraw::total_weight() const noexcept {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

DPParams posterior_update(const DPParams& prior, std::span<const double> data) {
  if (data.empty()) throw Error(ErrorCode::EmptyData, "posterior update needs at least one observation");
  const double eps = prior.concentration;
  const double n = static_cast<double>(data.size());
  const double total = eps + n;
  const std::vector<double> weights{eps / total, n / total};
  std::vector<BaseCDF> components{prior.base, BaseCDF::empirical(empirical_cdf(data))};
  return DPParams(total, BaseCDF::mixture(make_prob_vector(weights), std::move(components)));
}

DirichletParams finite_marginal(const DPParams& params, std::span<const double> partition_edges) {
  for (std::size_t i = 1; i < partition_edges.size(); ++i) {
    if (!(partition_edges[i - 1] < partition_edges[i])) {
      throw Error(ErrorCode::UnsortedEdges, "partition edges must be strictly increasing");
    }
  }
  if (partition_edges.empty()) {
    throw Error(ErrorCode::EmptyOrSingleton, "a partition needs at least one edge");
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> bounds{-inf};
  bounds.insert(bounds.end(), partition_edges.begin(), partition_edges.end());
  bounds.push_back(inf);

  const auto* emp = std::get_if<EmpiricalBase>(&params.base.variant());
  std::vector<double> alpha_vec;
  for (std::size_t c = 0; c + 1 < bounds.size(); ++c) {
    double a;
    if (emp != nullptr && emp->cdf.has_counts()) {
      // Integer cell counts keep alpha * count / n exact when alpha == n.
      const auto& atoms = emp->cdf.atoms;
      const auto first = std::upper_bound(atoms.begin(), atoms.end(), bounds[c]) - atoms.begin();
      const auto last = std::upper_bound(atoms.begin(), atoms.end(), bounds[c + 1]) - atoms.begin();
      std::uint64_t count = 0;
      for (auto i = first; i < last; ++i) count += emp->cdf.counts[static_cast<std::size_t>(i)];
      a = params.concentration * static_cast<double>(count) / static_cast<double>(emp->cdf.total);
    } else {
      a = params.concentration * params.base.interval_mass(bounds[c], bounds[c + 1]);
    }
    if (!(a > 0.0)) {
      throw Error(ErrorCode::ZeroMassCell, "cell " + std::to_string(c) + " has zero base mass");
    }
    alpha_vec.push_back(a);
  }
  return DirichletParams::from_concentration_vector(alpha_vec);
}

DiscreteCDFDraw sample_stick_breaking(const DPParams& params, double truncation_tol,
                                      std::uint64_t seed, std::uint64_t index, std::uint64_t sub) {
  if (!(truncation_tol > 0.0 && truncation_tol <= 0.1)) {
    throw Error(ErrorCode::InvalidArgument, "truncation tolerance must lie in (0, 0.1]");
  }
  Philox rng = substream(seed, StreamTag::StickBreaking, sub, index);
  DiscreteCDFDraw draw;
  const double log_tol = std::log(truncation_tol);
  double log_remaining = 0.0;
  while (log_remaining >= log_tol) {
    // 1 - v = U^(1/alpha) for v ~ Beta(1, alpha).
    const double log_keep = std::log(rng.uniform()) / params.concentration;
    const double stick = -std::expm1(log_keep);
    draw.weights.push_back(std::exp(log_remaining) * stick);
    draw.atoms.push_back(params.base.quantile(rng.uniform()));
    log_remaining += log_keep;
  }
  draw.truncation_mass = std::exp(log_remaining);
  return draw;
}

std::vector<DiscreteCDFDraw> sample_stick_breaking_batch(const DPParams& params,
                                                         double truncation_tol,
                                                         std::uint64_t seed, std::size_t draws) {
  std::vector<DiscreteCDFDraw> out(draws);
  parallel_for(draws, [&](std::size_t i) {
    out[i] = sample_stick_breaking(params, truncation_tol, seed, i);
  });
  return out;
}

std::vector<double> bootstrap_concentrations(const EmpiricalCDF& ecdf, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InconsistentCount, "n must be at least 1");
  std::vector<double> shapes(ecdf.size());
  if (ecdf.has_counts() && ecdf.total == n) {
    for (std::size_t i = 0; i < shapes.size(); ++i) shapes[i] = static_cast<double>(ecdf.counts[i]);
    return shapes;
  }
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const double scaled = static_cast<double>(n) * ecdf.masses[i];
    const double rounded = std::round(scaled);
    if (rounded < 1.0 || std::abs(scaled - rounded) > 1e-9 * std::max(1.0, scaled)) {
      throw Error(ErrorCode::InconsistentCount,
                  "n * mass is not a positive integer for atom " + std::to_string(i));
    }
    shapes[i] = rounded;
  }
  return shapes;
}

DiscreteCDFDraw bayesian_bootstrap_draw(const EmpiricalCDF& ecdf, std::uint64_t n,
                                        std::uint64_t seed, std::uint64_t index, std::uint64_t sub) {
  const std::vector<double> shapes = bootstrap_concentrations(ecdf, n);
  SplitMixStream rng = bulk_substream(seed, StreamTag::BayesianBootstrap, sub, index);
  DiscreteCDFDraw draw;
  draw.atoms = ecdf.atoms;
  draw.weights.resize(shapes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    draw.weights[i] = gamma_variate(shapes[i], rng);
    total += draw.weights[i];
  }
  for (double& w : draw.weights) w /= total;
  return draw;
}

DiscreteCDFDraw sample_process(const DPParams& params, double truncation_tol, std::uint64_t seed,
                               std::uint64_t index, std::uint64_t sub) {
  const auto* emp = std::get_if<EmpiricalBase>(&params.base.variant());
  if (emp == nullptr) return sample_stick_breaking(params, truncation_tol, seed, index, sub);

  std::vector<double> shapes(emp->cdf.size());
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    shapes[i] = emp->cdf.has_counts()
                    ? params.concentration * static_cast<double>(emp->cdf.counts[i]) /
                          static_cast<double>(emp->cdf.total)
                    : params.concentration * emp->cdf.masses[i];
  }
  DiscreteCDFDraw draw;
  draw.atoms = emp->cdf.atoms;
  if (shapes.size() == 1) {
    draw.weights = {1.0};
    return draw;
  }
  Philox rng = substream(seed, StreamTag::DirichletDraw, sub + 1, index);
  std::size_t clamped = 0;
  const ProbVector w = sample_one(shapes, rng, clamped);
  draw.weights.assign(w.begin(), w.end());
  return draw;
}

ProcessBoundReport process_invariance_bound(std::span<const double> eps_grid,
                                            std::span<const std::size_t> p_grid) {
  if (eps_grid.empty() || p_grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, "eps and p grids must be nonempty");
  }
  for (double e : eps_grid) {
    if (!(e > 0.0 && e <= 0.5)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, 0.5]");
  }
  for (std::size_t p : p_grid) {
    if (p < 2) throw Error(ErrorCode::InvalidArgument, "p must be at least 2");
  }
  std::vector<double> eps(eps_grid.begin(), eps_grid.end());
  std::vector<std::size_t> ps(p_grid.begin(), p_grid.end());
  std::sort(eps.begin(), eps.end());
  std::sort(ps.begin(), ps.end());

  ProcessBoundReport report;
  // log_c[pi][ei]
  std::vector<std::vector<double>> log_c(ps.size(), std::vector<double>(eps.size()));
  double log_k = -std::numeric_limits<double>::infinity();
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    const ProbVector uniform = make_prob_vector(std::vector<double>(ps[pi], 1.0));
    double log_k_p = -std::numeric_limits<double>::infinity();
    for (std::size_t ei = 0; ei < eps.size(); ++ei) {
      const double lc = log_c_eps(DirichletParams(eps[ei], uniform));
      log_c[pi][ei] = lc;
      report.entries.push_back({eps[ei], ps[pi], lc, std::exp(lc)});
      log_k_p = std::max(log_k_p, lc - std::log(eps[ei]));
    }
    report.k_per_p.push_back(std::exp(log_k_p));
    log_k = std::max(log_k, log_k_p);
  }
  report.k_bound = std::exp(log_k);

  report.monotone_in_eps = true;
  report.nonincreasing_in_p = true;
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    for (std::size_t ei = 1; ei < eps.size(); ++ei) {
      if (!(log_c[pi][ei - 1] < log_c[pi][ei])) report.monotone_in_eps = false;
      if (eps[ei - 1] * 2.0 == eps[ei] && log_c[pi][ei - 1] > log_c[pi][ei] - std::log(2.0)) {
        report.halving_ok = false;
      }
    }
  }
  for (std::size_t ei = 0; ei < eps.size(); ++ei) {
    for (std::size_t pi = 1; pi < ps.size(); ++pi) {
      if (log_c[pi][ei] > log_c[pi - 1][ei]) report.nonincreasing_in_p = false;
    }
  }
  report.pass = std::isfinite(log_k) && report.monotone_in_eps && report.nonincreasing_in_p &&
                report.halving_ok;
  return report;
}

}  // namespace dpinv
