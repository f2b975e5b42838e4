#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "doctest.h"
#include "dpinv/dirichlet.hpp"
#include "dpinv/error.hpp"
#include "dpinv/invariant_density.hpp"
#include "dpinv/rng.hpp"

using namespace dpinv;

TEST_CASE("dir0 log density examples") {
  CHECK(dir0_log_density(make_prob_vector({0.5, 0.5})) ==
        doctest::Approx(1.38629436111989).epsilon(1e-14));
  CHECK(dir0_log_density(make_prob_vector({1, 1, 1})) ==
        doctest::Approx(3.29583686600433).epsilon(1e-14));
  // Haldane: -log[t (1 - t)]
  for (double t : {0.01, 0.2, 0.5, 0.9}) {
    CHECK(dir0_log_density(make_prob_vector({t, 1 - t})) ==
          doctest::Approx(-std::log(t * (1 - t))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(dir0_log_density(make_prob_vector({1.0, 0.0})), Error);
}

TEST_CASE("functional equation residual examples") {
  const auto half = make_prob_vector({0.5, 0.5});
  const auto g = make_group_element({2, 1});
  CHECK(functional_eq_log_residual(uniform_density(), g, half) ==
        doctest::Approx(0.117783035656383).epsilon(1e-13));
  CHECK(functional_eq_log_residual(power_density({0.3, 2.0}), identity_element(2), half) == 0.0);
  CHECK(std::abs(functional_eq_log_residual(dir0_density(), g, half)) < 1e-15);
  CHECK_THROWS_AS(functional_eq_log_residual(dir0_density(), make_group_element({1, 2, 3}), half),
                  Error);
}

TEST_CASE("stability envelope examples") {
  CHECK(stability_envelope(0.1, make_prob_vector({0.5, 0.5})) ==
        doctest::Approx(0.577867144403906).epsilon(1e-14));
  const auto theta = make_prob_vector({0.2, 0.8});
  CHECK(stability_envelope(1e-12, theta) < 1e-10);
  CHECK(stability_envelope(0.1, make_prob_vector({1e-12, 1.0})) > 1e10);
  CHECK_THROWS_AS(stability_envelope(0.0, theta), Error);
  CHECK_THROWS_AS(stability_envelope(-1.0, theta), Error);
}

TEST_CASE("property: dir0 solves the functional equation") {
  Philox rng(201, 0);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t p = 2 + rng.below(9);
    const auto theta = random_interior_point(p, rng);
    const auto g = random_group_element(p, rng);
    worst = std::max(worst, std::abs(functional_eq_log_residual(dir0_density(), g, theta)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("property: other power laws are not invariant") {
  Philox rng(202, 0);
  for (const auto& exps : std::vector<std::vector<double>>{
           {1.1, 1.0}, {1.0, 1.0, 0.9}, {0.0, 0.0, 0.0, 0.0}, {2.0, 2.0, 2.0}}) {
    const auto pi = power_density(exps);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const auto theta = random_interior_point(exps.size(), rng);
      const auto g = random_group_element(exps.size(), rng);
      worst = std::max(worst, std::abs(functional_eq_log_residual(pi, g, theta)));
    }
    CHECK(worst > 1e-3);
  }
}

TEST_CASE("property: residual ignores the additive constant") {
  Philox rng(203, 0);
  for (int t = 0; t < 500; ++t) {
    const std::size_t p = 2 + rng.below(5);
    const auto theta = random_interior_point(p, rng);
    const auto g = random_group_element(p, rng);
    auto pi = power_density(std::vector<double>(p, 0.7));
    const double before = functional_eq_log_residual(pi, g, theta);
    pi.log_constant = -3.0 + 6.0 * rng.uniform();
    REQUIRE(functional_eq_log_residual(pi, g, theta) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("property: envelope is increasing in delta and decreasing in each coordinate") {
  Philox rng(204, 0);
  const double e1e = std::exp(std::exp(-1.0));
  for (int t = 0; t < 1000; ++t) {
    const std::size_t p = 2 + rng.below(5);
    const auto theta = random_interior_point(p, rng);
    const double d = 0.01 + rng.uniform();
    REQUIRE(stability_envelope(d * 1.01, theta) > stability_envelope(d, theta));
    const double prod = std::accumulate(theta.begin(), theta.end(), 1.0, std::multiplies<>());
    REQUIRE(stability_envelope(d, theta) * prod == doctest::Approx(d * e1e).epsilon(1e-12));

    // Raise a non-maximal coordinate by taking mass from the maximal one.
    std::vector<double> raw(theta.begin(), theta.end());
    const auto top = static_cast<std::size_t>(std::max_element(raw.begin(), raw.end()) - raw.begin());
    const std::size_t i = (top + 1 + rng.below(p - 1)) % p;
    const double shift = 0.25 * (raw[top] - raw[i]);
    if (shift <= 1e-9) continue;
    raw[i] += shift;
    raw[top] -= shift;
    REQUIRE(stability_envelope(d, make_prob_vector(raw)) < stability_envelope(d, theta));
  }
}

TEST_CASE("check_stability examples") {
  const auto dir0 = check_stability(dir0_density(), 3, 500, 1e-9, 1);
  CHECK(dir0.premise_met);
  CHECK(dir0.pass);
  CHECK(dir0.max_abs_log_residual < 1e-12);

  const DirichletParams eps(0.01, make_prob_vector({0.5, 0.5}));
  // The sup-norm residual diverges like 1/prod(theta) near the boundary, so the
  // margin alone does not meet the premise on a sample; the report says so.
  const auto at_margin = check_stability(dirichlet_density(eps), 2, 1000,
                                         eps_invariance_margin(eps).stability_margin, 2);
  CHECK(at_margin.pass);
  CHECK(at_margin.status() == "premise not met");
  const auto rep = check_stability(dirichlet_density(eps), 2, 1000, at_margin.max_residual * 1.01, 2);
  CHECK(rep.premise_met);
  CHECK(rep.conclusion_holds);
  CHECK(rep.pass);
  CHECK(rep.worst_envelope_ratio < 1.0);

  const auto uni = check_stability(uniform_density(), 2, 100, 1e-6, 3);
  CHECK_FALSE(uni.premise_met);
  CHECK(uni.status() == "premise not met");
}

TEST_CASE("check_stability is independent of scheduling") {
  const DirichletParams eps(0.1, make_prob_vector({0.2, 0.3, 0.5}));
  const auto a = check_stability(dirichlet_density(eps), 3, 300, 0.5, 9);
  const auto b = check_stability(dirichlet_density(eps), 3, 300, 0.5, 9);
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.worst_envelope_ratio == b.worst_envelope_ratio);
}
