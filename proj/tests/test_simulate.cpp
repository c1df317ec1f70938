#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ppgrow/errors.hpp"
#include "ppgrow/gof.hpp"
#include "ppgrow/model.hpp"
#include "ppgrow/rng.hpp"
#include "ppgrow/simulate.hpp"
#include "oracle.hpp"

using namespace ppgrow;

namespace {
SeppParams exp_params(double eta, double k, double beta) {
  return SeppParams{eta, k, TriggeringKernel::exponential(beta)};
}
}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("streams are deterministic and distinct") {
    RngStream a(42, 0);
    RngStream b(42, 0);
    RngStream c(42, 1);
    bool same_ab = true;
    bool same_ac = true;
    for (int i = 0; i < 100; ++i) {
      const double ua = a.uniform();
      same_ab = same_ab && ua == b.uniform();
      same_ac = same_ac && ua == c.uniform();
    }
    CHECK(same_ab);
    CHECK(!same_ac);
  }

  TEST_CASE("uniform range and exponential mean") {
    RngStream rng(3, 0);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double u = rng.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
    }
    CHECK(sum / 20000.0 == doctest::Approx(0.5).epsilon(0.02));

    double esum = 0.0;
    for (int i = 0; i < 20000; ++i) esum += rng.exponential(4.0);
    CHECK(esum / 20000.0 == doctest::Approx(0.25).epsilon(0.05));
  }
}

TEST_SUITE("simulate") {
  TEST_CASE("configuration errors") {
    const SeppParams p = exp_params(10, 0.5, 3);
    CHECK_THROWS_AS((void)simulate_sepp(p, std::nullopt, std::nullopt, 1), config_error);
    CHECK_THROWS_AS((void)simulate_sepp(p, 10.0, std::size_t{100}, 1), config_error);
    CHECK_THROWS_AS(
        (void)simulate_sepp(exp_params(10, 1.2, 3), std::nullopt, std::size_t{50}, 1),
        nonterminating_configuration_error);
    CHECK_THROWS_AS(
        (void)simulate_sepp(exp_params(0, 0.5, 3), std::nullopt, std::size_t{50}, 1),
        nonterminating_configuration_error);
    CHECK_THROWS_AS(
        (void)simulate_sepp(SeppParams{10, -0.2, TriggeringKernel::exponential(3)}, 10.0,
                            std::nullopt, 1),
        parameter_domain_error);
  }

  TEST_CASE("same seed reproduces, horizon respected") {
    const SeppParams p = exp_params(20, 0.5, 40);
    const EventTimes a = simulate_sepp(p, 30.0, std::nullopt, 7);
    const EventTimes b = simulate_sepp(p, 30.0, std::nullopt, 7);
    CHECK(a.values() == b.values());
    REQUIRE(!a.empty());
    CHECK(a.back() < 30.0);
    const EventTimes c = simulate_sepp(p, 30.0, std::nullopt, 8);
    CHECK(a.values() != c.values());
  }

  TEST_CASE("target-count mode returns exactly that many events") {
    const EventTimes out =
        simulate_sepp(exp_params(20, 0.5, 40), std::nullopt, std::size_t{500}, 3);
    CHECK(out.size() == 500);
  }

  TEST_CASE("Poisson special case has the right rate") {
    const EventTimes out = simulate_sepp(exp_params(10, 0, 1), 100.0, std::nullopt, 11);
    const double rate = static_cast<double>(out.size()) / 100.0;
    CHECK(std::abs(rate - 10.0) < 3.0 * std::sqrt(10.0 / 100.0));
  }

  TEST_CASE("Poisson counts over disjoint intervals: dispersion and independence") {
    // Counts on [0,1) and [1,2) across replications should be uncorrelated
    // with Poisson mean = variance; a chi-square test on the pooled counts
    // against the Poisson(10) pmf should pass at the 1% level.
    const int reps = 500;
    std::vector<double> first(reps), second(reps);
    std::vector<int> pooled;
    for (int r = 0; r < reps; ++r) {
      const EventTimes out =
          simulate_sepp(exp_params(10, 0, 1), 2.0, std::nullopt, 1000 + r);
      int c1 = 0;
      int c2 = 0;
      for (double t : out) (t < 1.0 ? c1 : c2) += 1;
      first[r] = c1;
      second[r] = c2;
      pooled.push_back(c1);
      pooled.push_back(c2);
    }
    // Correlation between disjoint-interval counts is near zero.
    const double m1 = testoracle::mean(first);
    const double m2 = testoracle::mean(second);
    double cov = 0.0, v1 = 0.0, v2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      cov += (first[r] - m1) * (second[r] - m2);
      v1 += (first[r] - m1) * (first[r] - m1);
      v2 += (second[r] - m2) * (second[r] - m2);
    }
    CHECK(std::abs(cov / std::sqrt(v1 * v2)) < 0.15);

    // Chi-square GOF against Poisson(10), cells {<=4},5,...,15,{>=16}: 13 cells,
    // 12 degrees of freedom, 1% critical value 26.217.
    std::vector<double> pmf(16, 0.0);
    double cum = 0.0;
    double term = std::exp(-10.0);
    for (int k = 0; k <= 15; ++k) {
      if (k > 0) term *= 10.0 / k;
      if (k <= 4) {
        pmf[0] += term;
      } else {
        pmf[k - 4] = term;
      }
      cum += term;
    }
    std::vector<double> expected(13, 0.0);
    for (int c = 0; c < 12; ++c) expected[c] = pmf[c] * pooled.size();
    expected[12] = (1.0 - cum) * pooled.size();
    std::vector<double> observed(13, 0.0);
    for (int x : pooled) {
      const int cell = x <= 4 ? 0 : (x >= 16 ? 12 : x - 4);
      observed[cell] += 1.0;
    }
    double chi2 = 0.0;
    for (int c = 0; c < 13; ++c) {
      chi2 += (observed[c] - expected[c]) * (observed[c] - expected[c]) / expected[c];
    }
    CHECK(chi2 < 26.217);
  }

  TEST_CASE("stationary mean rate matches eta/(1-K)") {
    const EventTimes out = simulate_sepp(exp_params(20, 0.5, 40), 200.0, std::nullopt, 5);
    const double rate = static_cast<double>(out.size()) / 200.0;
    // Crude standard error for a clustered process: inflate the Poisson se.
    CHECK(std::abs(rate - 40.0) < 3.0 * std::sqrt(40.0 / 200.0) * 2.0);
  }

  TEST_CASE("time-rescaling round trip at true parameters") {
    int pass = 0;
    const SeppParams p = exp_params(30, 0.4, 20);
    for (int r = 0; r < 25; ++r) {
      const EventTimes out = simulate_sepp(p, std::nullopt, std::size_t{400}, 40 + r);
      const Iets resid = transformed_iets(p, out);
      const KsResult ks = ks_exp_unit(resid.values);
      if (ks.decisions.at(0.05)) ++pass;
    }
    CHECK(pass >= 21);  // nominal 5% level: expect ~24 of 25
  }

  TEST_CASE("power-law simulation round trip") {
    const SeppParams p{5.0, 0.5, TriggeringKernel::power_law(3.0)};
    const EventTimes out = simulate_sepp(p, std::nullopt, std::size_t{300}, 9);
    CHECK(out.size() == 300);
    const KsResult ks = ks_exp_unit(transformed_iets(p, out).values);
    CHECK(ks.p_value > 0.01);
  }
}

TEST_SUITE("simulate_nhpp") {
  TEST_CASE("piecewise rate validation") {
    CHECK_THROWS_AS(PiecewiseRate({}, {}).require_valid(), domain_error);
    CHECK_THROWS_AS(PiecewiseRate({0.0, 1.0}, {-2.0}).require_valid(), domain_error);
    CHECK_THROWS_AS(PiecewiseRate({1.0, 0.0}, {2.0}).require_valid(), domain_error);
    CHECK_THROWS_AS(PiecewiseRate({0.0, 1.0}, {1.0, 2.0}).require_valid(), domain_error);
    CHECK_NOTHROW(PiecewiseRate({0.0, 0.5, 1.0}, {3.0, 0.0}).require_valid());
  }

  TEST_CASE("zero rate yields no events") {
    CHECK(simulate_nhpp(PiecewiseRate({0.0, 5.0}, {0.0}), 1).empty());
  }

  TEST_CASE("single segment count is Poisson(rate * length)") {
    std::vector<double> counts(200);
    for (int r = 0; r < 200; ++r) {
      counts[r] = static_cast<double>(
          simulate_nhpp(PiecewiseRate({0.0, 4.0}, {6.0}), 100 + r).size());
    }
    const double m = testoracle::mean(counts);
    CHECK(std::abs(m - 24.0) < 3.0 * std::sqrt(24.0 / 200.0));
  }

  TEST_CASE("two segments recover programmed rates and stay in support") {
    const PiecewiseRate rate({0.0, 2.0, 3.0}, {5.0, 50.0});
    double n1 = 0.0;
    double n2 = 0.0;
    for (int r = 0; r < 200; ++r) {
      const EventTimes out = simulate_nhpp(rate, 500 + r);
      for (double t : out) {
        REQUIRE(t >= 0.0);
        REQUIRE(t < 3.0);
        (t < 2.0 ? n1 : n2) += 1.0;
      }
    }
    CHECK(std::abs(n1 / 200.0 - 10.0) < 3.0 * std::sqrt(10.0 / 200.0));
    CHECK(std::abs(n2 / 200.0 - 50.0) < 3.0 * std::sqrt(50.0 / 200.0));
  }

  TEST_CASE("events are sorted within and across segments") {
    const EventTimes out = simulate_nhpp(PiecewiseRate({0.0, 1.0, 2.0}, {40.0, 40.0}), 77);
    CHECK(std::is_sorted(out.begin(), out.end()));
  }
}

TEST_SUITE("simulate_three_phase") {
  TEST_CASE("zero startup, one day, inactive morning keeps support") {
    ThreePhaseConfig config;
    config.startup_params = exp_params(1, 0, 1);
    config.startup_duration = 0.0;
    config.daily_rates = {200.0};
    config.inactive_start_hour = 0.0;
    config.inactive_end_hour = 9.0;
    config.seed = 21;
    const EventTimes out = simulate_three_phase(config);
    REQUIRE(!out.empty());
    for (double t : out) {
      const double hour = (t - std::floor(t)) * 24.0;
      CHECK(hour >= 9.0);
      CHECK(hour < 24.0);
    }
  }

  TEST_CASE("wrapped inactive window respected") {
    ThreePhaseConfig config;
    config.startup_params = exp_params(1, 0, 1);
    config.startup_duration = 0.0;
    config.daily_rates = {300.0, 300.0};
    config.inactive_start_hour = 22.0;
    config.inactive_end_hour = 6.0;
    config.seed = 4;
    const EventTimes out = simulate_three_phase(config);
    REQUIRE(!out.empty());
    for (double t : out) {
      const double hour = (t - std::floor(t)) * 24.0;
      CHECK((hour >= 6.0 && hour < 22.0));
    }
  }

  TEST_CASE("phases are ordered and the daily phase starts at a day boundary") {
    ThreePhaseConfig config;
    config.startup_params = exp_params(20, 0.5, 40);
    config.startup_duration = 10.5;
    config.daily_rates = {100.0, 100.0, 100.0};
    config.seed = 13;
    const EventTimes out = simulate_three_phase(config);
    REQUIRE(!out.empty());
    CHECK(std::is_sorted(out.begin(), out.end()));
    CHECK(out.back() < 14.0);  // ceil(10.5) = 11 days + 3 daily phases
    for (double t : out) {
      const bool in_startup = t < 10.5;
      const bool in_daily = t >= 11.0;
      CHECK((in_startup || in_daily));
    }
  }

  TEST_CASE("startup IETs are burstier than a rate-matched Poisson sample") {
    ThreePhaseConfig config;
    config.startup_params = exp_params(20, 0.5, 40);
    config.startup_duration = 50.0;
    config.seed = 31;
    const EventTimes clustered = simulate_three_phase(config);
    const EventTimes poisson = simulate_sepp(exp_params(40, 0, 1), 50.0, std::nullopt, 32);
    const double b_clustered = burstiness(inter_event_times(clustered));
    const double b_poisson = burstiness(inter_event_times(poisson));
    CHECK(b_clustered > b_poisson);
    CHECK(b_clustered > 0.1);
  }

  TEST_CASE("determinism in seed") {
    ThreePhaseConfig config;
    config.startup_params = exp_params(20, 0.5, 40);
    config.startup_duration = 5.0;
    config.daily_rates = {50.0, 80.0};
    config.inactive_start_hour = 1.0;
    config.inactive_end_hour = 8.0;
    config.seed = 77;
    const EventTimes a = simulate_three_phase(config);
    const EventTimes b = simulate_three_phase(config);
    CHECK(a.values() == b.values());
  }
}
