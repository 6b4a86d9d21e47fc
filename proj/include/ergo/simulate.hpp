#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ergo/deformed.hpp"
#include "ergo/gamble.hpp"
#include "ergo/io.hpp"

namespace ergo {

// splitmix64 (Steele/Lea/Vigna), the documented generator identity for all
// simulations. Trajectory i runs on the substream seeded with seed ^ i, so
// results do not depend on execution order or parallelism degree.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random bits.
    double next_uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Compensated (Kahan) accumulator; reductions over trajectories always run
// in ascending index order so sums are schedule-independent.
class KahanSum {
public:
    void add(double v) noexcept {
        const double y = v - c_;
        const double t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const noexcept { return sum_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

// Repeated two-outcome multiplicative gamble: each step multiplies wealth
// by 1+x with probability p, by 1 otherwise.
struct SimConfig {
    Probability p;
    double x;
    std::uint64_t steps;
    std::uint64_t trajectories;
    std::uint64_t seed;

    SimConfig(Probability p_, double x_, std::uint64_t steps_, std::uint64_t trajectories_,
              std::uint64_t seed_)
        : p(p_), x(x_), steps(steps_), trajectories(trajectories_), seed(seed_) {
        if (!(x >= -1.0))
            throw std::domain_error("SimConfig: requires x >= -1");
        if (steps < 1)
            throw std::domain_error("SimConfig: steps must be >= 1");
        if (trajectories < 1)
            throw std::domain_error("SimConfig: trajectories must be >= 1");
    }
};

struct SimSummary {
    // Geometric mean per-step wealth ratio over all realized steps,
    // exp(mean log multiplier); 0 if any trajectory was ruined.
    double empirical_growth_factor;
    double analytic_growth_factor;  // (1+x)^p
    // Arithmetic mean of realized step multipliers across trajectories.
    double ensemble_mean_factor;
    double ensemble_mean_analytic;  // 1 + p*x
    // |empirical - analytic| / analytic (absolute difference if analytic = 0).
    double relative_error;
    std::uint64_t ruined_trajectories;
};

namespace detail {

struct TrajectoryStats {
    std::uint64_t wins = 0;
    std::uint64_t realized = 0;  // steps actually played (ruin is absorbing)
    bool ruined = false;
};

// Both outcomes of a step share one of two multipliers, so per-trajectory
// log and factor sums reduce to exact win counts; the summary reduction is
// therefore exact in any schedule.
inline TrajectoryStats run_trajectory(const SimConfig& cfg, std::uint64_t index,
                                      std::ostream* wealth_csv = nullptr) {
    SplitMix64 rng(cfg.seed ^ index);
    const double q = cfg.p.value();
    const bool ruin_on_win = (1.0 + cfg.x == 0.0);
    const double win_log = ruin_on_win ? 0.0 : std::log1p(cfg.x);
    TrajectoryStats stats;
    if (wealth_csv)
        *wealth_csv << index << ",0,1\n";
    for (std::uint64_t t = 1; t <= cfg.steps; ++t) {
        const bool win = rng.next_uniform01() < q;
        ++stats.realized;
        if (win)
            ++stats.wins;
        const bool ruined_now = win && ruin_on_win;
        if (wealth_csv) {
            const double wealth =
                ruined_now ? 0.0 : std::exp(win_log * static_cast<double>(stats.wins));
            *wealth_csv << index << ',' << t << ',' << format_g9(wealth) << '\n';
        }
        if (ruined_now) {
            stats.ruined = true;
            break;
        }
    }
    return stats;
}

inline double median_inplace(std::vector<double>& values) {
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    if (n % 2 != 0)
        return values[mid];
    const double hi = values[mid];
    const double lo = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Runs the configured simulation. Deterministic for a given seed and config,
// independent of the thread count. When wealth_csv is given the run is
// serial and streams rows (trajectory_id, t, wealth), header included.
inline SimSummary simulate(const SimConfig& cfg, unsigned threads = 1,
                           std::ostream* wealth_csv = nullptr) {
    const std::uint64_t n = cfg.trajectories;
    std::vector<detail::TrajectoryStats> stats(n);

    unsigned worker_count = threads == 0 ? 1 : threads;
    if (wealth_csv || n < 2)
        worker_count = 1;
    if (worker_count > n)
        worker_count = static_cast<unsigned>(n);

    if (worker_count == 1) {
        if (wealth_csv)
            *wealth_csv << "trajectory_id,t,wealth\n";
        for (std::uint64_t i = 0; i < n; ++i)
            stats[i] = detail::run_trajectory(cfg, i, wealth_csv);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        const std::uint64_t chunk = (n + worker_count - 1) / worker_count;
        for (unsigned w = 0; w < worker_count; ++w) {
            const std::uint64_t begin = w * chunk;
            const std::uint64_t end = std::min(n, begin + chunk);
            workers.emplace_back([&, begin, end] {
                for (std::uint64_t i = begin; i < end; ++i)
                    stats[i] = detail::run_trajectory(cfg, i);
            });
        }
        for (auto& worker : workers)
            worker.join();
    }

    std::uint64_t total_wins = 0;
    std::uint64_t total_realized = 0;
    std::uint64_t ruined = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        total_wins += stats[i].wins;
        total_realized += stats[i].realized;
        if (stats[i].ruined)
            ++ruined;
    }

    SimSummary summary{};
    summary.ruined_trajectories = ruined;
    summary.analytic_growth_factor = time_average_factor_risky(cfg.p, cfg.x);
    summary.ensemble_mean_analytic = 1.0 + cfg.p.value() * cfg.x;

    const double wins = static_cast<double>(total_wins);
    const double realized = static_cast<double>(total_realized);
    summary.ensemble_mean_factor = (wins * (1.0 + cfg.x) + (realized - wins)) / realized;
    if (ruined > 0) {
        summary.empirical_growth_factor = 0.0;
    } else {
        const double mean_log = std::log1p(cfg.x) * (wins / realized);
        summary.empirical_growth_factor = std::exp(mean_log);
    }

    const double gap = std::fabs(summary.empirical_growth_factor - summary.analytic_growth_factor);
    summary.relative_error =
        summary.analytic_growth_factor > 0.0 ? gap / summary.analytic_growth_factor : gap;
    return summary;
}

// One row of the ensemble-vs-time comparison: the cross-sectional mean
// tracks (1+px)^t while the median trajectory tracks (1+x)^(pt).
struct DivergenceRow {
    std::uint64_t t;
    double ensemble_mean_wealth;
    double median_wealth;
    double ensemble_mean_analytic;
    double median_analytic;
};

inline std::vector<DivergenceRow> divergence_demo(Probability p, double x, std::uint64_t steps,
                                                  std::uint64_t trajectories, std::uint64_t seed) {
    const SimConfig cfg(p, x, steps, trajectories, seed);  // reuse validation
    const double q = p.value();
    const bool ruin_on_win = (1.0 + x == 0.0);
    const double win_log = ruin_on_win ? 0.0 : std::log1p(x);

    const std::size_t n = static_cast<std::size_t>(trajectories);
    std::vector<SplitMix64> rngs;
    rngs.reserve(n);
    for (std::uint64_t i = 0; i < trajectories; ++i)
        rngs.emplace_back(seed ^ i);
    std::vector<std::uint64_t> wins(n, 0);
    std::vector<bool> ruined(n, false);

    std::vector<DivergenceRow> rows;
    rows.reserve(static_cast<std::size_t>(steps) + 1);
    rows.push_back({0, 1.0, 1.0, 1.0, 1.0});

    std::vector<double> wealth(n);
    std::vector<double> scratch(n);
    for (std::uint64_t t = 1; t <= steps; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            if (ruined[i])
                continue;
            if (rngs[i].next_uniform01() < q) {
                if (ruin_on_win)
                    ruined[i] = true;
                else
                    ++wins[i];
            }
        }
        KahanSum mean;
        for (std::size_t i = 0; i < n; ++i) {
            wealth[i] = ruined[i] ? 0.0 : std::exp(win_log * static_cast<double>(wins[i]));
            mean.add(wealth[i]);
        }
        scratch = wealth;
        DivergenceRow row;
        row.t = t;
        row.ensemble_mean_wealth = mean.value() / static_cast<double>(n);
        row.median_wealth = detail::median_inplace(scratch);
        row.ensemble_mean_analytic = std::pow(1.0 + q * x, static_cast<double>(t));
        row.median_analytic = std::pow(1.0 + x, q * static_cast<double>(t));
        rows.push_back(row);
    }
    return rows;
}

inline std::string render_divergence_csv(const std::vector<DivergenceRow>& rows) {
    std::string out = "t,ensemble_mean_wealth,median_wealth,ensemble_mean_analytic,median_analytic\n";
    for (const auto& r : rows) {
        out += std::to_string(r.t);
        out += ',';
        out += format_g9(r.ensemble_mean_wealth);
        out += ',';
        out += format_g9(r.median_wealth);
        out += ',';
        out += format_g9(r.ensemble_mean_analytic);
        out += ',';
        out += format_g9(r.median_analytic);
        out += '\n';
    }
    return out;
}

}  // namespace ergo
