#include <cmath>
#include <numeric>

#include "doctest.h"
#include "dpinv/error.hpp"
#include "dpinv/invariant_density.hpp"
#include "dpinv/rng.hpp"
#include "dpinv/simplex.hpp"

using namespace dpinv;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected dpinv::Error");
  return ErrorCode::InvalidArgument;
}

constexpr double kLog8Over9 = -0.117783035656383;  // mpmath

}  // namespace

TEST_CASE("make_prob_vector normalizes") {
  const auto a = make_prob_vector({1, 1});
  CHECK(a[0] == 0.5);
  CHECK(a[1] == 0.5);
  const auto b = make_prob_vector({2, 1, 1});
  CHECK(b[0] == 0.5);
  CHECK(b[1] == 0.25);
  CHECK(b[2] == 0.25);
}

TEST_CASE("make_prob_vector rejects bad input") {
  CHECK(code_of([] { make_prob_vector({1, -0.1}); }) == ErrorCode::NegativeEntry);
  CHECK(code_of([] { make_prob_vector({1}); }) == ErrorCode::EmptyOrSingleton);
  CHECK(code_of([] { make_prob_vector({0, 0}); }) == ErrorCode::ZeroSum);
  CHECK(code_of([] { make_prob_vector({1, NAN}); }) == ErrorCode::NonFinite);
}

TEST_CASE("apply examples") {
  const auto theta = make_prob_vector({0.3, 0.7});
  CHECK(apply(make_group_element({1, 1}), theta) == theta);

  const auto half = make_prob_vector({0.5, 0.5});
  const auto out = apply(make_group_element({2, 1}), half);
  CHECK(out[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(out[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(apply(make_group_element({4, 2}), half) == out);

  CHECK(code_of([&] { apply(make_group_element({1, 2, 3}), half); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("group element canonical form") {
  CHECK(make_group_element({2, 1}) == make_group_element({4, 2}));
  CHECK(make_group_element({3, 3, 3}).is_identity());
  CHECK(code_of([] { make_group_element({1, 0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("compose and inverse examples") {
  const auto id2 = identity_element(2);
  CHECK(compose(make_group_element({2, 1}), make_group_element({1, 2})) == id2);
  CHECK(compose(make_group_element({2, 1}), make_group_element({3, 1})) ==
        make_group_element({6, 1}));
  const auto g = make_group_element({0.2, 0.5, 0.3});
  CHECK(compose(identity_element(3), g) == g);
  CHECK(inverse(id2) == id2);
  const auto inv = inverse(make_group_element({2, 1}));
  CHECK(inv[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(inv[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("log_rn_derivative examples") {
  CHECK(log_rn_derivative(make_group_element({1, 1}), make_prob_vector({0.3, 0.7})) == 0.0);
  const auto half = make_prob_vector({0.5, 0.5});
  CHECK(log_rn_derivative(make_group_element({2, 1}), half) ==
        doctest::Approx(kLog8Over9).epsilon(1e-13));
  CHECK(numerical_log_jacobian(make_group_element({2, 1}), half, 1e-5) ==
        doctest::Approx(kLog8Over9).epsilon(1e-6));
  CHECK(std::abs(numerical_log_jacobian(identity_element(3), make_prob_vector({0.2, 0.3, 0.5}),
                                        1e-5)) < 1e-8);
}

TEST_CASE("numerical_log_jacobian preconditions") {
  const auto g = make_group_element({2, 1});
  CHECK(code_of([&] { numerical_log_jacobian(g, make_prob_vector({0.5, 0.5}), 0.0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { numerical_log_jacobian(g, make_prob_vector({1e-6, 1.0}), 1e-5); }) ==
        ErrorCode::BoundaryPoint);
}

TEST_CASE("property: group laws on random elements") {
  Philox rng(101, 0);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t p = 2 + rng.below(9);
    const auto g1 = random_group_element(p, rng);
    const auto g2 = random_group_element(p, rng);
    const auto g3 = random_group_element(p, rng);
    const auto lhs = compose(compose(g1, g2), g3);
    const auto rhs = compose(g1, compose(g2, g3));
    for (std::size_t i = 0; i < p; ++i) {
      REQUIRE(std::abs(lhs[i] - rhs[i]) < 1e-14);
      REQUIRE(std::abs(compose(g1, inverse(g1))[i] - 1.0 / static_cast<double>(p)) < 1e-14);
    }
    // canonical(k c) == canonical(c)
    std::vector<double> scaled(g1.scales().begin(), g1.scales().end());
    for (double& c : scaled) c *= 37.25;
    const auto back = make_group_element(scaled);
    for (std::size_t i = 0; i < p; ++i) REQUIRE(std::abs(back[i] - g1[i]) < 1e-15);
  }
}

TEST_CASE("property: apply preserves the simplex") {
  Philox rng(102, 0);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t p = 2 + rng.below(9);
    const auto theta = random_interior_point(p, rng);
    const auto out = apply(random_group_element(p, rng), theta);
    double sum = 0.0;
    for (double w : out) {
      REQUIRE(w >= 0.0);
      sum += w;
    }
    REQUIRE(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("property: apply is a homomorphism and inverse undoes it") {
  Philox rng(103, 0);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t p = 2 + rng.below(9);
    const auto theta = random_interior_point(p, rng);
    const auto g1 = random_group_element(p, rng);
    const auto g2 = random_group_element(p, rng);
    const auto a = apply(compose(g1, g2), theta);
    const auto b = apply(g1, apply(g2, theta));
    const auto c = apply(inverse(g1), apply(g1, theta));
    for (std::size_t i = 0; i < p; ++i) {
      REQUIRE(std::abs(a[i] - b[i]) < 1e-12);
      REQUIRE(std::abs(c[i] - theta[i]) < 1e-10);
    }
  }
}

TEST_CASE("property: cocycle identity of the log derivative") {
  Philox rng(104, 0);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t p = 2 + rng.below(9);
    const auto theta = random_interior_point(p, rng);
    const auto g1 = random_group_element(p, rng);
    const auto g2 = random_group_element(p, rng);
    const double lhs = log_rn_derivative(compose(g1, g2), theta);
    const double rhs = log_rn_derivative(g1, apply(g2, theta)) + log_rn_derivative(g2, theta);
    REQUIRE(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("property: closed-form derivative matches finite differences") {
  Philox rng(105, 0);
  int compared = 0;
  double worst = 0.0;
  while (compared < 1000) {
    const std::size_t p = 2 + rng.below(5);
    const auto theta = random_interior_point(p, rng);
    if (*std::min_element(theta.begin(), theta.end()) < 1e-3) continue;
    const auto g = random_group_element(p, rng);
    worst = std::max(worst, std::abs(log_rn_derivative(g, theta) -
                                     numerical_log_jacobian(g, theta, 1e-5)));
    ++compared;
  }
  CHECK(worst < 1e-5);
}
