#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "dpinv/dirichlet_process.hpp"
#include "dpinv/error.hpp"
#include "dpinv/stats.hpp"
#include "oracles.hpp"

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

double draw_cdf(const DiscreteCDFDraw& d, double t) {
  double s = 0.0;
  for (std::size_t i = 0; i < d.atoms.size(); ++i)
    if (d.atoms[i] <= t) s += d.weights[i];
  return s;
}

}  // namespace

TEST_CASE("empirical_cdf merges ties") {
  const double data[] = {2.0, 1.0, 2.0};
  const auto e = empirical_cdf(data);
  CHECK(e.atoms == std::vector<double>{1.0, 2.0});
  CHECK(e.counts == std::vector<std::uint64_t>{1, 2});
  CHECK(e.masses[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(e.masses[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(BaseCDF::empirical(e).cdf_at(2.0) == 1.0);

  const double one[] = {5.0};
  const auto single = empirical_cdf(one);
  CHECK(single.size() == 1);
  CHECK_FALSE(single.mass_vector().has_value());
  CHECK(BaseCDF::empirical(single).cdf_at(5.0) == 1.0);
  CHECK(BaseCDF::empirical(single).cdf_at(4.9) == 0.0);
  CHECK(code_of([] { empirical_cdf(std::span<const double>{}); }) == ErrorCode::EmptyData);
}

TEST_CASE("base cdf quantile round trip") {
  std::vector<BaseCDF> bases{BaseCDF::uniform(-1.0, 3.0), BaseCDF::gaussian(2.0, 0.5),
                             BaseCDF::mixture(make_prob_vector({0.3, 0.7}),
                                              {BaseCDF::uniform(0, 1), BaseCDF::gaussian(0, 1)})};
  for (const auto& b : bases) {
    for (double u : {0.01, 0.2, 0.5, 0.77, 0.99}) {
      CHECK(b.cdf_at(b.quantile(u)) == doctest::Approx(u).epsilon(1e-9));
    }
    double prev = 0.0;
    for (double t = -5.0; t <= 5.0; t += 0.05) {
      const double c = b.cdf_at(t);
      REQUIRE(c >= prev);
      prev = c;
    }
  }
  const double data[] = {1.0, 2.0, 2.0, 4.0};
  const auto emp = BaseCDF::empirical(empirical_cdf(data));
  CHECK(emp.quantile(0.25) == 1.0);
  CHECK(emp.quantile(0.26) == 2.0);
  CHECK(emp.quantile(0.8) == 4.0);
}

TEST_CASE("posterior_update examples") {
  const DPParams prior(1.0, BaseCDF::uniform(0.0, 1.0));
  const double data[] = {0.2, 0.7, 0.7};
  const auto post = posterior_update(prior, data);
  CHECK(post.concentration == 4.0);
  // 1/4 Uniform + 3/4 F_3
  for (double t : {0.1, 0.2, 0.5, 0.7, 0.9}) {
    const double emp = (t >= 0.2 ? 1.0 / 3.0 : 0.0) + (t >= 0.7 ? 2.0 / 3.0 : 0.0);
    CHECK(post.base.cdf_at(t) == doctest::Approx(0.25 * t + 0.75 * emp).epsilon(1e-14));
  }
  const auto limit = posterior_update(DPParams(1e-9, BaseCDF::uniform(0, 1)), data);
  const auto& mix = std::get<MixtureBase>(limit.base.variant());
  CHECK(mix.weights[0] < 1e-9);
  CHECK(code_of([&] { posterior_update(prior, std::span<const double>{}); }) == ErrorCode::EmptyData);
}

TEST_CASE("property: sequential and batched updates agree") {
  std::mt19937_64 gen(31);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(-4.0, 4.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> d1(5 + rep), d2(3 + 2 * rep);
    for (auto& x : d1) x = std::round(nd(gen) * 4) / 4;  // ties across batches
    for (auto& x : d2) x = std::round(nd(gen) * 4) / 4;
    std::vector<double> all = d1;
    all.insert(all.end(), d2.begin(), d2.end());
    const DPParams prior(0.5 + rep, BaseCDF::gaussian(0.0, 2.0));
    const auto seq = posterior_update(posterior_update(prior, d1), d2);
    const auto bat = posterior_update(prior, all);
    REQUIRE(seq.concentration == bat.concentration);
    for (int k = 0; k < 100; ++k) {
      const double t = ud(gen);
      REQUIRE(std::abs(seq.base.cdf_at(t) - bat.base.cdf_at(t)) < 1e-12);
    }
  }
}

TEST_CASE("finite_marginal examples") {
  const double data[] = {1.0, 2.0, 2.0};
  const DPParams emp(3.0, BaseCDF::empirical(empirical_cdf(data)));
  const double cut[] = {1.5};
  const auto m = finite_marginal(emp, cut);
  CHECK(m.concentration_vector()[0] == 1.0);
  CHECK(m.concentration_vector()[1] == 2.0);

  const double half[] = {0.5};
  const auto u = finite_marginal(DPParams(6.0, BaseCDF::uniform(0, 1)), half);
  CHECK(u.concentration_vector()[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(u.concentration_vector()[1] == doctest::Approx(3.0).epsilon(1e-15));

  const double empty_cell[] = {0.2, 0.4};
  CHECK(code_of([&] { finite_marginal(emp, empty_cell); }) == ErrorCode::ZeroMassCell);
  const double unsorted[] = {0.6, 0.4};
  CHECK(code_of([&] { finite_marginal(DPParams(1.0, BaseCDF::uniform(0, 1)), unsorted); }) ==
        ErrorCode::UnsortedEdges);
}

TEST_CASE("stick-breaking examples") {
  const auto degenerate = sample_stick_breaking(DPParams(1e-6, BaseCDF::uniform(0, 1)), 1e-8, 1);
  CHECK(*std::max_element(degenerate.weights.begin(), degenerate.weights.end()) > 0.999);

  const auto a = sample_stick_breaking(DPParams(2.0, BaseCDF::gaussian(0, 1)), 1e-8, 5, 3);
  const auto b = sample_stick_breaking(DPParams(2.0, BaseCDF::gaussian(0, 1)), 1e-8, 5, 3);
  CHECK(a.atoms == b.atoms);
  CHECK(a.weights == b.weights);
  CHECK(a.truncation_mass < 1e-8);
  CHECK(a.total_weight() + a.truncation_mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(sample_stick_breaking(DPParams(2.0, BaseCDF::uniform(0, 1)), 0.5, 1), Error);
}

TEST_CASE("stick-breaking F(0.5) mean and marginal law") {
  const DPParams params(5.0, BaseCDF::uniform(0, 1));
  const auto draws = sample_stick_breaking_batch(params, 1e-8, 77, 10000);
  std::vector<double> f05;
  for (const auto& d : draws) f05.push_back(draw_cdf(d, 0.5));
  const double se = std::sqrt(0.25 / 6.0 / 1e4);  // Beta(2.5, 2.5) variance 1/24
  CHECK(std::abs(mean_of(f05) - 0.5) < 3.0 * se);
  CHECK(oracle::ks_brute(f05, oracle::beta_draws(2.5, 2.5, 10000, 501)) <
        oracle::ks_critical_1pct(10000, 10000));

  // Mean correctness at ten points.
  for (int k = 1; k <= 10; ++k) {
    const double t = (k - 0.5) / 10.0;
    std::vector<double> v;
    for (const auto& d : draws) v.push_back(draw_cdf(d, t));
    const double sd = std::sqrt(t * (1 - t) / 6.0 / 1e4);
    CHECK(std::abs(mean_of(v) - t) < 3.0 * sd);
  }
}

TEST_CASE("bayesian bootstrap concentrations are exact integers") {
  const double data[] = {1.0, 2.0, 2.0, 3.0, 3.0, 3.0};
  const auto e = empirical_cdf(data);
  CHECK(bootstrap_concentrations(e, 6) == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(code_of([&] { bootstrap_concentrations(e, 4); }) == ErrorCode::InconsistentCount);

  // Same vector as finite_marginal on singleton cells of DP(n, F_n).
  const double edges[] = {1.5, 2.5};
  const auto fm = finite_marginal(DPParams(6.0, BaseCDF::empirical(e)), edges);
  const auto conc = bootstrap_concentrations(e, 6);
  for (std::size_t i = 0; i < 3; ++i) CHECK(fm.concentration_vector()[i] == conc[i]);
}

TEST_CASE("bayesian bootstrap draw examples") {
  const double four[] = {0.1, 0.4, 0.2, 0.9};
  const auto e4 = empirical_cdf(four);
  std::vector<double> acc(4, 0.0);
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const auto d = bayesian_bootstrap_draw(e4, 4, 8, i);
    CHECK(d.truncation_mass == 0.0);
    for (std::size_t k = 0; k < 4; ++k) acc[k] += d.weights[k];
  }
  // Var of a Dirichlet(1,1,1,1) weight is 3/80.
  for (double a : acc) CHECK(std::abs(a / 20000 - 0.25) < 3.0 * std::sqrt(3.0 / 80.0 / 20000));

  const double tied[] = {1.0, 2.0, 2.0};
  std::vector<double> w1;
  for (std::uint64_t i = 0; i < 10000; ++i) w1.push_back(bayesian_bootstrap_draw(empirical_cdf(tied), 3, 9, i).weights[0]);
  CHECK(oracle::ks_brute(w1, oracle::beta_draws(1, 2, 10000, 77)) < oracle::ks_critical_1pct(10000, 10000));
}

TEST_CASE("bayesian bootstrap marginal vs Beta(1, n-1)") {
  std::vector<double> data(50);
  for (int i = 0; i < 50; ++i) data[i] = 0.37 * i * i - 3.0 * i;
  const auto e = empirical_cdf(data);
  REQUIRE(e.size() == 50);
  std::vector<double> w;
  for (std::uint64_t i = 0; i < 10000; ++i) w.push_back(bayesian_bootstrap_draw(e, 50, 12, i).weights[7]);
  CHECK(oracle::ks_brute(w, oracle::beta_draws(1, 49, 10000, 1234)) < oracle::ks_critical_1pct(10000, 10000));
}

TEST_CASE("sample_process on an empirical base is exact Dirichlet") {
  const double data[] = {3.0, 1.0, 2.0};
  const DPParams params(3.0, BaseCDF::empirical(empirical_cdf(data)));
  const auto d = sample_process(params, 1e-8, 4, 2);
  CHECK(d.atoms == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(d.truncation_mass == 0.0);
  CHECK(d.total_weight() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("process bound examples") {
  const double eps[] = {0.5, 0.1, 0.01, 0.001};
  std::vector<std::size_t> ps;
  for (std::size_t p = 2; p <= 50; ++p) ps.push_back(p);
  const auto r = process_invariance_bound(eps, ps);
  CHECK(r.pass);
  CHECK(r.monotone_in_eps);
  CHECK(r.nonincreasing_in_p);
  CHECK(r.halving_ok);
  CHECK(r.k_bound == doctest::Approx(0.2696763005941897).epsilon(1e-10));
  for (const auto& e : r.entries) REQUIRE(e.c_eps <= r.k_bound * e.eps * (1 + 1e-12));
  const auto hit = std::find_if(r.entries.begin(), r.entries.end(),
                                [](const auto& e) { return e.p == 2 && e.eps == 0.1; });
  REQUIRE(hit != r.entries.end());
  CHECK(hit->c_eps == doctest::Approx(0.0250960265446682).epsilon(1e-12));

  CHECK_THROWS_AS(process_invariance_bound(std::span<const double>{}, ps), Error);
  const double bad[] = {0.7};
  CHECK_THROWS_AS(process_invariance_bound(bad, ps), Error);
}
