#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpinv/base_cdf.hpp"
#include "dpinv/dirichlet_process.hpp"
#include "dpinv/stats.hpp"

namespace dpinv {

// A summary of a random CDF F.
class Functional {
 public:
  enum class Kind { Mean, Quantile, CdfAt };

  static Functional mean() { return Functional(Kind::Mean, 0.0); }
  // Throws InvalidArgument unless 0 < q < 1.
  static Functional quantile(double q);
  static Functional cdf_at(double t);
  // "mean", "quantile:<q>" or "cdf:<t>".
  static Functional parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return parameter_; }
  std::string to_string() const;

 private:
  Functional(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}
  Kind kind_;
  double parameter_;
};

// Evaluates f on sum_i w_i delta(atom_i) after dividing out the total weight.
// Quantile is the left-continuous generalized inverse: the smallest atom whose
// cumulative weight reaches q. `atoms_sorted` skips the sort for ordered atoms.
double functional_of_weights(std::span<const double> atoms, std::span<const double> weights,
                             const Functional& f, bool atoms_sorted = false);

// Throws EmptyDraw for a draw without atoms or positive weight.
double functional_of_draw(const DiscreteCDFDraw& draw, const Functional& f);

struct TwoArmData {
  std::vector<double> control;
  std::vector<double> treatment;
};

struct ArmSummary {
  std::size_t observations = 0;
  double point_estimate = 0.0;
  Interval credible_interval{};
};

// Posterior of f(F_treatment) - f(F_control) under independent DP posteriors.
struct PosteriorSummary {
  std::string functional;
  std::size_t draws_used = 0;
  double point_estimate = 0.0;
  Interval credible_interval{};
  ArmSummary control;
  ArmSummary treatment;
  std::uint64_t seed = 0;
  // Prior concentration used for both arms; 0 means the exact DP(n, F_n) limit.
  double prior_concentration = 0.0;
};

// Optional proper prior DP(eps, F0) for each arm; the posterior then goes
// through posterior_update and sample_process.
struct PriorOverride {
  double concentration;
  BaseCDF base;
  double truncation_tol = kDefaultTruncationTol;
};

// Throws InsufficientDraws (draws < 100), EmptyArm, InvalidArgument (level
// outside (0.5, 1)).
PosteriorSummary analyze_two_arm(const TwoArmData& data, const Functional& f, std::size_t draws,
                                 double level, std::uint64_t seed,
                                 const std::optional<PriorOverride>& prior = std::nullopt);

// f evaluated on `draws` resamples with replacement of the data.
std::vector<double> frequentist_bootstrap(std::span<const double> data, const Functional& f,
                                          std::size_t draws, std::uint64_t seed);

// f evaluated on `draws` realizations of DP(n, F_n).
std::vector<double> bayesian_bootstrap(std::span<const double> data, const Functional& f,
                                       std::size_t draws, std::uint64_t seed);

inline constexpr double kDefaultEquivalenceThreshold = 0.05;

struct BootstrapEquivalence {
  double ks_distance = 0.0;
  double threshold = kDefaultEquivalenceThreshold;
  std::size_t draws = 0;
  bool pass = false;
};

// KS distance between the frequentist and Bayesian bootstrap distributions of
// f. Throws TooFewObservations (< 100 data) or InsufficientDraws (< 1000).
BootstrapEquivalence bootstrap_equivalence(std::span<const double> data, const Functional& f,
                                           std::size_t draws, std::uint64_t seed,
                                           double threshold = kDefaultEquivalenceThreshold);

}  // namespace dpinv
