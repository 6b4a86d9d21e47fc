#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "ergo/simulate.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace ergo;

TEST_CASE("splitmix64 reference sequence", "[simulate]") {
    SplitMix64 a(0);
    REQUIRE(a.next() == 0xE220A8397B1DCDAFull);
    REQUIRE(a.next() == 0x6E789E6AA1B965F4ull);
    REQUIRE(a.next() == 0x06C45D188009454Full);
    REQUIRE(a.next() == 0xF88BB8A8724C81ECull);

    SplitMix64 b(1234567);
    REQUIRE(b.next() == 0x599ED017FB08FC85ull);
    REQUIRE(b.next() == 0x2C73F08458540FA5ull);
    REQUIRE(b.next() == 0x883EBCE5A3F27C77ull);
    REQUIRE(b.next() == 0x3FBEF740E9177B3Full);

    SplitMix64 c(0);
    REQUIRE_THAT(c.next_uniform01(), WithinRel(0.8833108082136426, 1e-15));
    for (int i = 0; i < 1000; ++i) {
        const double u = c.next_uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("SimConfig validation", "[simulate]") {
    REQUIRE_NOTHROW(SimConfig(Probability(0.5), 1.0, 1, 1, 0));
    REQUIRE_THROWS_AS(SimConfig(Probability(0.5), -1.5, 10, 1, 0), std::domain_error);
    REQUIRE_THROWS_AS(SimConfig(Probability(0.5), 1.0, 0, 1, 0), std::domain_error);
    REQUIRE_THROWS_AS(SimConfig(Probability(0.5), 1.0, 10, 0, 0), std::domain_error);
}

TEST_CASE("degenerate probabilities give exact factors", "[simulate]") {
    const SimSummary sure = simulate(SimConfig(Probability(1.0), 0.3, 250, 3, 7));
    REQUIRE_THAT(sure.empirical_growth_factor, WithinRel(1.3, 1e-12));
    REQUIRE_THAT(sure.ensemble_mean_factor, WithinRel(1.3, 1e-12));
    REQUIRE_THAT(sure.analytic_growth_factor, WithinRel(1.3, 1e-14));
    REQUIRE(sure.relative_error <= 1e-12);
    REQUIRE(sure.ruined_trajectories == 0);

    const SimSummary idle = simulate(SimConfig(Probability(0.0), 0.9, 100, 2, 7));
    REQUIRE(idle.empirical_growth_factor == 1.0);
    REQUIRE(idle.ensemble_mean_factor == 1.0);
    REQUIRE(idle.analytic_growth_factor == 1.0);
}

TEST_CASE("empirical growth matches the analytic factor", "[simulate]") {
    const SimSummary s = simulate(SimConfig(Probability(0.5), 1.0, 100000, 1, 7));
    REQUIRE_THAT(s.analytic_growth_factor, WithinRel(1.4142135623730951, 1e-14));
    REQUIRE(s.relative_error < 0.01);
    REQUIRE_THAT(s.empirical_growth_factor, WithinRel(1.4142135623730951, 0.01));
    REQUIRE_THAT(s.ensemble_mean_analytic, WithinRel(1.5, 1e-14));
}

TEST_CASE("ensemble mean matches 1 + p x", "[simulate]") {
    const SimSummary s = simulate(SimConfig(Probability(0.5), 1.0, 1, 1000000, 1), 4);
    REQUIRE_THAT(s.ensemble_mean_factor, WithinRel(1.5, 0.005));
}

TEST_CASE("results do not depend on the thread count", "[simulate]") {
    const SimConfig cfg(Probability(0.3), 0.5, 500, 997, 42);
    const SimSummary one = simulate(cfg, 1);
    const SimSummary four = simulate(cfg, 4);
    const SimSummary five = simulate(cfg, 5);
    REQUIRE(one.empirical_growth_factor == four.empirical_growth_factor);
    REQUIRE(one.ensemble_mean_factor == four.ensemble_mean_factor);
    REQUIRE(one.relative_error == four.relative_error);
    REQUIRE(one.ruined_trajectories == four.ruined_trajectories);
    REQUIRE(one.empirical_growth_factor == five.empirical_growth_factor);
    REQUIRE(one.ensemble_mean_factor == five.ensemble_mean_factor);

    const SimSummary again = simulate(cfg, 1);
    REQUIRE(one.empirical_growth_factor == again.empirical_growth_factor);
    REQUIRE(one.ensemble_mean_factor == again.ensemble_mean_factor);
}

TEST_CASE("ruin is absorbing and zeroes the growth factor", "[simulate]") {
    const SimSummary s = simulate(SimConfig(Probability(0.5), -1.0, 50, 64, 3));
    REQUIRE(s.ruined_trajectories >= 1);
    REQUIRE(s.empirical_growth_factor == 0.0);
    REQUIRE(s.analytic_growth_factor == 0.0);
}

TEST_CASE("trajectory dump golden output", "[simulate]") {
    std::ostringstream csv;
    simulate(SimConfig(Probability(1.0), 0.3, 3, 2, 5), 1, &csv);
    REQUIRE(csv.str() ==
            "trajectory_id,t,wealth\n"
            "0,0,1\n0,1,1.3\n0,2,1.69\n0,3,2.197\n"
            "1,0,1\n1,1,1.3\n1,2,1.69\n1,3,2.197\n");
}

TEST_CASE("trajectory dump stops at ruin", "[simulate]") {
    std::ostringstream csv;
    const SimSummary s = simulate(SimConfig(Probability(1.0), -1.0, 5, 2, 9), 1, &csv);
    REQUIRE(csv.str() ==
            "trajectory_id,t,wealth\n"
            "0,0,1\n0,1,0\n"
            "1,0,1\n1,1,0\n");
    REQUIRE(s.ruined_trajectories == 2);
    REQUIRE(s.empirical_growth_factor == 0.0);
}

TEST_CASE("relative error shrinks with more steps", "[simulate][property]") {
    auto median_error = [](std::uint64_t steps) {
        std::vector<double> errors;
        for (std::uint64_t seed = 100; seed < 120; ++seed)
            errors.push_back(
                simulate(SimConfig(Probability(0.5), 1.0, steps, 1, seed)).relative_error);
        std::sort(errors.begin(), errors.end());
        return 0.5 * (errors[9] + errors[10]);
    };
    const double e3 = median_error(1000);
    const double e4 = median_error(10000);
    const double e5 = median_error(100000);
    REQUIRE(e4 <= e3);
    REQUIRE(e5 <= e4);
}

TEST_CASE("simulated hyperbolized loss reproduces the sure factor", "[simulate]") {
    // risky change e_p(x) - 1 with x = -0.8, p = 0.5: (1 - 0.4)^2 - 1
    const double hyper_x = -0.64;
    const SimSummary s = simulate(SimConfig(Probability(0.5), hyper_x, 100000, 1, 11));
    REQUIRE_THAT(s.analytic_growth_factor, WithinRel(0.6, 1e-12));
    REQUIRE_THAT(s.empirical_growth_factor, WithinRel(0.6, 0.01));
}

TEST_CASE("divergence rows with certain wins are deterministic", "[simulate]") {
    const auto rows = divergence_demo(Probability(1.0), 0.3, 5, 3, 1);
    REQUIRE(rows.size() == 6);
    REQUIRE(rows[0].t == 0);
    REQUIRE(rows[0].ensemble_mean_wealth == 1.0);
    REQUIRE(rows[0].median_wealth == 1.0);
    for (std::size_t t = 1; t < rows.size(); ++t) {
        const double expected = std::pow(1.3, static_cast<double>(t));
        REQUIRE_THAT(rows[t].ensemble_mean_wealth, WithinRel(expected, 1e-12));
        REQUIRE_THAT(rows[t].median_wealth, WithinRel(expected, 1e-12));
        REQUIRE_THAT(rows[t].ensemble_mean_analytic, WithinRel(expected, 1e-12));
        REQUIRE_THAT(rows[t].median_analytic, WithinRel(expected, 1e-12));
    }
}

TEST_CASE("ensemble mean and median diverge", "[simulate]") {
    const auto rows = divergence_demo(Probability(0.5), 1.0, 20, 100000, 7);
    const DivergenceRow& last = rows.back();
    REQUIRE(last.t == 20);
    REQUIRE_THAT(last.ensemble_mean_analytic, WithinRel(3325.256730079651, 1e-9));
    REQUIRE_THAT(last.median_analytic, WithinRel(1024.0, 1e-9));
    REQUIRE_THAT(last.ensemble_mean_wealth, WithinRel(3325.256730079651, 0.05));
    REQUIRE_THAT(last.median_wealth, WithinRel(1024.0, 0.05));
}

TEST_CASE("total-loss divergence drives the median to zero", "[simulate]") {
    const auto rows = divergence_demo(Probability(0.5), -1.0, 10, 2000, 3);
    REQUIRE(rows.back().median_wealth == 0.0);
    REQUIRE(rows.back().median_analytic == 0.0);
    REQUIRE_THAT(rows[1].ensemble_mean_analytic, WithinRel(0.5, 1e-14));
    REQUIRE_THAT(rows[2].ensemble_mean_analytic, WithinRel(0.25, 1e-14));
}

TEST_CASE("divergence csv layout", "[simulate]") {
    const auto rows = divergence_demo(Probability(1.0), 0.3, 2, 2, 1);
    const std::string csv = render_divergence_csv(rows);
    REQUIRE(csv.rfind("t,ensemble_mean_wealth,median_wealth,ensemble_mean_analytic,"
                      "median_analytic\n0,1,1,1,1\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 4);
}
