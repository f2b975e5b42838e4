#include "dpinv/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpinv/error.hpp"

namespace dpinv {
namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

std::vector<double> canonical_scales(std::vector<double> scales) {
  const double total = std::accumulate(scales.begin(), scales.end(), 0.0);
  if (!std::isfinite(total) || total <= 0.0) {
    throw Error(ErrorCode::NonFinite, "scale vector cannot be normalized");
  }
  for (double& c : scales) c /= total;
  return scales;
}

}  // namespace

bool ProbVector::is_interior() const noexcept {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](double w) { return w >= kBoundaryFloor; });
}

ProbVector make_prob_vector(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::EmptyOrSingleton, "a probability vector needs at least two entries");
  }
  double total = 0.0;
  for (double v : values) {
    if (std::isnan(v)) throw Error(ErrorCode::NonFinite, "NaN entry");
    if (v < 0.0) throw Error(ErrorCode::NegativeEntry, "entry " + std::to_string(v));
    total += v;
  }
  if (!std::isfinite(total)) throw Error(ErrorCode::NonFinite, "entries sum to infinity");
  if (total <= 0.0) throw Error(ErrorCode::ZeroSum, "entries sum to zero");
  std::vector<double> w(values.begin(), values.end());
  for (double& x : w) x /= total;
  return ProbVector(std::move(w));
}

bool GroupElement::is_identity() const noexcept {
  return std::all_of(scales_.begin(), scales_.end(),
                     [first = scales_.front()](double c) { return c == first; });
}

GroupElement make_group_element(std::span<const double> scales) {
  if (scales.size() < 2) {
    throw Error(ErrorCode::EmptyOrSingleton, "a group element needs at least two scales");
  }
  for (double c : scales) {
    if (!std::isfinite(c)) throw Error(ErrorCode::NonFinite, "non-finite scale");
    if (c <= 0.0) throw Error(ErrorCode::InvalidArgument, "scales must be strictly positive");
  }
  return GroupElement(canonical_scales({scales.begin(), scales.end()}));
}

GroupElement identity_element(std::size_t p) {
  const std::vector<double> ones(p, 1.0);
  return make_group_element(ones);
}

ProbVector apply(const GroupElement& g, const ProbVector& theta) {
  require_same_dim(g.size(), theta.size());
  if (g.is_identity()) return theta;
  std::vector<double> moved(theta.size());
  for (std::size_t i = 0; i < moved.size(); ++i) moved[i] = g[i] * theta[i];
  return make_prob_vector(moved);
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  require_same_dim(g1.size(), g2.size());
  std::vector<double> product(g1.size());
  for (std::size_t i = 0; i < product.size(); ++i) product[i] = g1[i] * g2[i];
  return make_group_element(product);
}

GroupElement inverse(const GroupElement& g) {
  std::vector<double> recip(g.size());
  for (std::size_t i = 0; i < recip.size(); ++i) recip[i] = 1.0 / g[i];
  return make_group_element(recip);
}

double log_rn_derivative(const GroupElement& g, const ProbVector& theta) {
  require_same_dim(g.size(), theta.size());
  if (g.is_identity()) return 0.0;
  double log_prod = 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    log_prod += std::log(g[i]);
    dot += g[i] * theta[i];
  }
  const double result = log_prod - static_cast<double>(g.size()) * std::log(dot);
  if (!std::isfinite(result)) {
    throw Error(ErrorCode::BoundaryPoint, "Radon-Nikodym derivative is not finite here");
  }
  return result;
}

double numerical_log_jacobian(const GroupElement& g, const ProbVector& theta, double step) {
  require_same_dim(g.size(), theta.size());
  if (!(step > 0.0 && step <= 1e-3)) {
    throw Error(ErrorCode::InvalidArgument, "step must lie in (0, 1e-3]");
  }
  for (double t : theta) {
    if (t < 10.0 * step) throw Error(ErrorCode::BoundaryPoint, "theta too close to the boundary");
  }
  const std::size_t p = theta.size();
  const std::size_t m = p - 1;

  // Chart coordinates (theta_1..theta_{p-1}); theta_p is implied.
  auto chart_map = [&](const Eigen::VectorXd& x) {
    double last = 1.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      last -= x[static_cast<Eigen::Index>(i)];
      dot += g[i] * x[static_cast<Eigen::Index>(i)];
    }
    dot += g[m] * last;
    Eigen::VectorXd y(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
      y[static_cast<Eigen::Index>(i)] = g[i] * x[static_cast<Eigen::Index>(i)] / dot;
    }
    return y;
  };

  Eigen::VectorXd x(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) x[static_cast<Eigen::Index>(i)] = theta[i];

  Eigen::MatrixXd jac(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m); ++j) {
    Eigen::VectorXd up = x;
    Eigen::VectorXd down = x;
    up[j] += step;
    down[j] -= step;
    jac.col(j) = (chart_map(up) - chart_map(down)) / (2.0 * step);
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < jac.rows(); ++i) log_det += std::log(std::abs(lu.matrixLU()(i, i)));
  if (!std::isfinite(log_det)) throw Error(ErrorCode::NonFinite, "singular finite-difference Jacobian");
  return log_det;
}

}  // namespace dpinv
