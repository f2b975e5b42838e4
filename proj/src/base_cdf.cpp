#include "dpinv/base_cdf.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "dpinv/error.hpp"

namespace dpinv {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> cumulative_of(const EmpiricalCDF& cdf) {
  std::vector<double> cum(cdf.size());
  if (cdf.has_counts()) {
    std::uint64_t running = 0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
      running += cdf.counts[i];
      cum[i] = static_cast<double>(running) / static_cast<double>(cdf.total);
    }
  } else {
    double running = 0.0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
      running += cdf.masses[i];
      cum[i] = std::min(running, 1.0);
    }
  }
  cum.back() = 1.0;
  return cum;
}

void collect_atoms(const BaseCDF& base, double lo, double hi, std::vector<double>& out) {
  std::visit(Overloaded{
                 [&](const EmpiricalBase& e) {
                   auto first = std::upper_bound(e.cdf.atoms.begin(), e.cdf.atoms.end(), lo);
                   for (; first != e.cdf.atoms.end() && *first <= hi; ++first) out.push_back(*first);
                 },
                 [&](const MixtureBase& m) {
                   for (const auto& c : m.components) collect_atoms(c, lo, hi, out);
                 },
                 [](const auto&) {},
             },
             base.variant());
}

}  // namespace

std::optional<ProbVector> EmpiricalCDF::mass_vector() const {
  if (masses.size() < 2) return std::nullopt;
  return make_prob_vector(masses);
}

EmpiricalCDF empirical_cdf(std::span<const double> data) {
  if (data.empty()) throw Error(ErrorCode::EmptyData, "no observations");
  std::vector<double> sorted(data.begin(), data.end());
  for (double x : sorted) {
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "observation is not finite");
  }
  std::sort(sorted.begin(), sorted.end());
  EmpiricalCDF cdf;
  cdf.total = sorted.size();
  for (double x : sorted) {
    if (cdf.atoms.empty() || cdf.atoms.back() != x) {
      cdf.atoms.push_back(x);
      cdf.counts.push_back(1);
    } else {
      ++cdf.counts.back();
    }
  }
  cdf.masses.reserve(cdf.counts.size());
  for (auto c : cdf.counts) cdf.masses.push_back(static_cast<double>(c) / static_cast<double>(cdf.total));
  return cdf;
}

EmpiricalCDF weighted_empirical_cdf(std::vector<double> atoms, const ProbVector& masses) {
  if (atoms.size() != masses.size()) {
    throw Error(ErrorCode::DimensionMismatch, "atoms and masses differ in length");
  }
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (!(atoms[i - 1] < atoms[i])) throw Error(ErrorCode::UnsortedEdges, "atoms must be strictly increasing");
  }
  EmpiricalCDF cdf;
  cdf.atoms = std::move(atoms);
  cdf.masses.assign(masses.begin(), masses.end());
  return cdf;
}

BaseCDF BaseCDF::uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw Error(ErrorCode::InvalidBase, "uniform base needs finite lo < hi");
  }
  return BaseCDF(UniformBase{lo, hi});
}

BaseCDF BaseCDF::gaussian(double location, double scale) {
  if (!(std::isfinite(location) && std::isfinite(scale) && scale > 0.0)) {
    throw Error(ErrorCode::InvalidBase, "gaussian base needs a finite location and scale > 0");
  }
  return BaseCDF(GaussianBase{location, scale});
}

BaseCDF BaseCDF::empirical(EmpiricalCDF cdf) {
  if (cdf.atoms.empty() || cdf.atoms.size() != cdf.masses.size()) {
    throw Error(ErrorCode::InvalidBase, "empirical base needs matching, nonempty atoms and masses");
  }
  auto cum = cumulative_of(cdf);
  return BaseCDF(EmpiricalBase{std::move(cdf), std::move(cum)});
}

BaseCDF BaseCDF::mixture(ProbVector weights, std::vector<BaseCDF> components) {
  if (weights.size() != components.size()) {
    throw Error(ErrorCode::InvalidBase, "mixture weights and components differ in length");
  }
  return BaseCDF(MixtureBase{std::move(weights), std::move(components)});
}

std::string BaseCDF::kind() const {
  return std::visit(Overloaded{
                        [](const UniformBase&) { return std::string("uniform"); },
                        [](const GaussianBase&) { return std::string("gaussian"); },
                        [](const EmpiricalBase&) { return std::string("empirical"); },
                        [](const MixtureBase&) { return std::string("mixture"); },
                    },
                    v_);
}

double BaseCDF::cdf_at(double t) const {
  return std::visit(
      Overloaded{
          [t](const UniformBase& u) {
            if (t <= u.lo) return 0.0;
            if (t >= u.hi) return 1.0;
            return (t - u.lo) / (u.hi - u.lo);
          },
          [t](const GaussianBase& g) {
            return 0.5 * std::erfc(-(t - g.location) / (g.scale * std::numbers::sqrt2));
          },
          [t](const EmpiricalBase& e) {
            const auto it = std::upper_bound(e.cdf.atoms.begin(), e.cdf.atoms.end(), t);
            if (it == e.cdf.atoms.begin()) return 0.0;
            return e.cumulative[static_cast<std::size_t>(it - e.cdf.atoms.begin()) - 1];
          },
          [t](const MixtureBase& m) {
            double f = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              f += m.weights[i] * m.components[i].cdf_at(t);
            }
            return std::min(f, 1.0);
          },
      },
      v_);
}

double BaseCDF::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile level must lie in (0, 1)");
  return std::visit(
      Overloaded{
          [u](const UniformBase& b) { return b.lo + u * (b.hi - b.lo); },
          [u](const GaussianBase& g) {
            return boost::math::quantile(boost::math::normal_distribution<>(g.location, g.scale), u);
          },
          [u](const EmpiricalBase& e) {
            auto it = std::lower_bound(e.cumulative.begin(), e.cumulative.end(), u);
            if (it == e.cumulative.end()) --it;
            return e.cdf.atoms[static_cast<std::size_t>(it - e.cumulative.begin())];
          },
          [u, this](const MixtureBase& m) {
            // The answer lies between the smallest and largest component quantiles.
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (const auto& c : m.components) {
              const double q = c.quantile(u);
              lo = std::min(lo, q);
              hi = std::max(hi, q);
            }
            if (cdf_at(lo) >= u) return lo;
            // Invariant: F(lo) < u <= F(hi).
            for (int iter = 0; iter < 200; ++iter) {
              const double mid = lo + 0.5 * (hi - lo);
              if (mid <= lo || mid >= hi) break;
              if (cdf_at(mid) >= u) {
                hi = mid;
              } else {
                lo = mid;
              }
            }
            std::vector<double> atoms;
            collect_atoms(*this, lo, hi, atoms);
            std::sort(atoms.begin(), atoms.end());
            for (double a : atoms) {
              if (cdf_at(a) >= u) return a;
            }
            return hi;
          },
      },
      v_);
}

double BaseCDF::interval_mass(double a, double b) const {
  if (b <= a) return 0.0;
  return std::max(0.0, cdf_at(b) - cdf_at(a));
}

}  // namespace dpinv
