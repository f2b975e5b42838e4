#include "dpinv/inference.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "dpinv/error.hpp"
#include "dpinv/kernels.hpp"

namespace dpinv {
namespace {

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

ArmSummary summarize_arm(std::size_t n, const std::vector<double>& values, double level) {
  return {n, mean_of(values), equal_tailed_interval(values, level)};
}

}  // namespace

Functional Functional::quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile level must lie in (0, 1)");
  return Functional(Kind::Quantile, q);
}

Functional Functional::cdf_at(double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "cdf point must be finite");
  return Functional(Kind::CdfAt, t);
}

Functional Functional::parse(std::string_view text) {
  if (text == "mean") return mean();
  if (text.starts_with("quantile:")) return quantile(parse_number(text.substr(9)));
  if (text.starts_with("cdf:")) return cdf_at(parse_number(text.substr(4)));
  throw Error(ErrorCode::InvalidArgument,
              "functional must be mean, quantile:<q> or cdf:<t>, got '" + std::string(text) + "'");
}

std::string Functional::to_string() const {
  char buf[64];
  switch (kind_) {
    case Kind::Mean:
      return "mean";
    case Kind::Quantile: {
      const auto res = std::to_chars(buf, buf + sizeof buf, parameter_);
      return "quantile:" + std::string(buf, res.ptr);
    }
    case Kind::CdfAt: {
      const auto res = std::to_chars(buf, buf + sizeof buf, parameter_);
      return "cdf:" + std::string(buf, res.ptr);
    }
  }
  return "unknown";
}

double functional_of_weights(std::span<const double> atoms, std::span<const double> weights,
                             const Functional& f, bool atoms_sorted) {
  if (atoms.empty() || atoms.size() != weights.size()) {
    throw Error(ErrorCode::EmptyDraw, "draw has no atoms or mismatched weights");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::EmptyDraw, "draw carries no weight");

  switch (f.kind()) {
    case Functional::Kind::Mean: {
      double s = 0.0;
      for (std::size_t i = 0; i < atoms.size(); ++i) s += weights[i] * atoms[i];
      return s / total;
    }
    case Functional::Kind::CdfAt: {
      double s = 0.0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i] <= f.parameter()) s += weights[i];
      }
      return s / total;
    }
    case Functional::Kind::Quantile: {
      std::vector<std::size_t> order(atoms.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      if (!atoms_sorted) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
      }
      const double target = f.parameter() * total;
      double cum = 0.0;
      for (std::size_t i : order) {
        cum += weights[i];
        if (cum >= target) return atoms[i];
      }
      return atoms[order.back()];
    }
  }
  return 0.0;
}

double functional_of_draw(const DiscreteCDFDraw& draw, const Functional& f) {
  return functional_of_weights(draw.atoms, draw.weights, f);
}

PosteriorSummary analyze_two_arm(const TwoArmData& data, const Functional& f, std::size_t draws,
                                 double level, std::uint64_t seed,
                                 const std::optional<PriorOverride>& prior) {
  if (data.control.empty() || data.treatment.empty()) {
    throw Error(ErrorCode::EmptyArm, "both arms need at least one observation");
  }
  if (draws < 100) throw Error(ErrorCode::InsufficientDraws, "at least 100 posterior draws are required");
  if (!(level > 0.5 && level < 1.0)) throw Error(ErrorCode::InvalidArgument, "level must lie in (0.5, 1)");

  std::vector<double> control;
  std::vector<double> treatment;
  if (prior) {
    const DPParams base_prior(prior->concentration, prior->base);
    control = kernels::process_functional(posterior_update(base_prior, data.control), f,
                                          prior->truncation_tol, draws, seed, 0);
    treatment = kernels::process_functional(posterior_update(base_prior, data.treatment), f,
                                            prior->truncation_tol, draws, seed, 1);
  } else {
    control = kernels::bayesian_bootstrap_functional(empirical_cdf(data.control), f, draws, seed, 0);
    treatment = kernels::bayesian_bootstrap_functional(empirical_cdf(data.treatment), f, draws, seed, 1);
  }

  std::vector<double> diff(draws);
  for (std::size_t i = 0; i < draws; ++i) diff[i] = treatment[i] - control[i];

  PosteriorSummary summary;
  summary.functional = f.to_string();
  summary.draws_used = draws;
  summary.point_estimate = mean_of(diff);
  summary.credible_interval = equal_tailed_interval(diff, level);
  summary.control = summarize_arm(data.control.size(), control, level);
  summary.treatment = summarize_arm(data.treatment.size(), treatment, level);
  summary.seed = seed;
  summary.prior_concentration = prior ? prior->concentration : 0.0;
  return summary;
}

std::vector<double> frequentist_bootstrap(std::span<const double> data, const Functional& f,
                                          std::size_t draws, std::uint64_t seed) {
  if (data.empty()) throw Error(ErrorCode::EmptyData, "bootstrap needs data");
  if (draws == 0) throw Error(ErrorCode::InsufficientDraws, "at least one draw is required");
  return kernels::frequentist_bootstrap_functional(data, f, draws, seed);
}

std::vector<double> bayesian_bootstrap(std::span<const double> data, const Functional& f,
                                       std::size_t draws, std::uint64_t seed) {
  if (data.empty()) throw Error(ErrorCode::EmptyData, "bootstrap needs data");
  if (draws == 0) throw Error(ErrorCode::InsufficientDraws, "at least one draw is required");
  return kernels::bayesian_bootstrap_functional(empirical_cdf(data), f, draws, seed);
}

BootstrapEquivalence bootstrap_equivalence(std::span<const double> data, const Functional& f,
                                           std::size_t draws, std::uint64_t seed,
                                           double threshold) {
  if (data.size() < 100) {
    throw Error(ErrorCode::TooFewObservations, "equivalence check needs at least 100 observations");
  }
  if (draws < 1000) throw Error(ErrorCode::InsufficientDraws, "equivalence check needs at least 1000 draws");
  const auto frequentist = frequentist_bootstrap(data, f, draws, seed);
  const auto bayesian = bayesian_bootstrap(data, f, draws, seed);
  BootstrapEquivalence result;
  result.ks_distance = ks_two_sample(frequentist, bayesian);
  result.threshold = threshold;
  result.draws = draws;
  result.pass = result.ks_distance < threshold;
  return result;
}

}  // namespace dpinv
