#include "p3p/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace p3p {

namespace {

// keeps the optimizer from eliding repeated solves with identical inputs
template <class T> inline void opt_barrier(const T &value) {
    asm volatile("" : : "g"(&value) : "memory");
}

} // namespace

ErrorPair error_metrics(const Pose &sol, const Mat3 &R_gt, const Vec3 &t_gt) {
    ErrorPair e;
    for (int i = 0; i < 9; ++i) {
        e.xi_r += std::abs(R_gt.m[i] - sol.R.m[i]);
    }
    e.xi_t = std::abs(t_gt.x - sol.t.x) + std::abs(t_gt.y - sol.t.y) + std::abs(t_gt.z - sol.t.z);
    return e;
}

TrialReport classify_trial(const SolverOutput &solutions, const P3PInstance &inst,
                           const Mat3 &R_gt, const Vec3 &t_gt) {
    TrialReport rep;
    rep.valid = static_cast<uint32_t>(solutions.count);
    rep.best_error = std::numeric_limits<double>::infinity();

    // conditions 1-4 per solution
    std::array<bool, 4> passes{};
    for (int i = 0; i < solutions.count; ++i) {
        passes[i] = check_pose_validity(solutions.solutions[i].pose, inst).all();
        const ErrorPair e = error_metrics(solutions.solutions[i].pose, R_gt, t_gt);
        const double total = e.xi_r + e.xi_t;
        rep.best_error = std::min(rep.best_error, total);
        if (total < 1e-6) {
            rep.ground_truth = 1;
        }
    }

    // condition 5: remove duplicates among the passing solutions
    std::array<bool, 4> is_dup{};
    for (int i = 0; i < solutions.count; ++i) {
        if (!passes[i] || is_dup[i]) {
            continue;
        }
        for (int j = i + 1; j < solutions.count; ++j) {
            if (!passes[j] || is_dup[j]) {
                continue;
            }
            if (pose_distance_l1(solutions.solutions[i].pose, solutions.solutions[j].pose) <
                1e-5) {
                is_dup[j] = true;
            }
        }
    }

    for (int i = 0; i < solutions.count; ++i) {
        if (!passes[i]) {
            ++rep.incorrect;
        } else if (is_dup[i]) {
            ++rep.duplicates;
        } else {
            ++rep.unique;
        }
    }
    rep.good = rep.unique > 0 ? 1 : 0;
    rep.no_solution = 1 - rep.good;
    return rep;
}

namespace {

struct TrialAccumulator {
    Counters counters;
    Histogram histogram;
    uint64_t max_solutions = 0;

    void add(const TrialReport &rep) {
        counters.valid += rep.valid;
        counters.unique += rep.unique;
        counters.duplicates += rep.duplicates;
        counters.good += rep.good;
        counters.no_solution += rep.no_solution;
        counters.ground_truth += rep.ground_truth;
        counters.incorrect += rep.incorrect;
        max_solutions = std::max<uint64_t>(max_solutions, rep.valid);
        if (rep.valid > 0) {
            const double lg = std::log10(std::max(rep.best_error, 1e-300));
            int bin = static_cast<int>(std::floor((lg - Histogram::kBinLow) / Histogram::kBinWidth));
            bin = std::clamp(bin, 0, Histogram::kBins - 1);
            ++histogram.counts[bin];
        }
    }

    void merge(const TrialAccumulator &other) {
        counters.valid += other.counters.valid;
        counters.unique += other.counters.unique;
        counters.duplicates += other.counters.duplicates;
        counters.good += other.counters.good;
        counters.no_solution += other.counters.no_solution;
        counters.ground_truth += other.counters.ground_truth;
        counters.incorrect += other.counters.incorrect;
        max_solutions = std::max(max_solutions, other.max_solutions);
        for (int i = 0; i < Histogram::kBins; ++i) {
            histogram.counts[i] += other.histogram.counts[i];
        }
    }
};

TrialReport run_trial(uint64_t seed, uint64_t index) {
    const GroundTruthInstance g = gen_instance(seed, index);
    const SolverOutput out = solve_p3p(g.inst);
    return classify_trial(out, g.inst, g.R_gt, g.t_gt);
}

} // namespace

BenchReport run_benchmark(const BenchConfig &cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    const uint64_t n = cfg.samples;

    std::vector<double> best_errors(n);
    TrialAccumulator acc;

#ifdef _OPENMP
    const bool parallel = cfg.threads > 1;
#else
    const bool parallel = false;
#endif

    if (!parallel) {
        // serial reference path
        for (uint64_t i = 0; i < n; ++i) {
            const TrialReport rep = run_trial(cfg.seed, i);
            best_errors[i] = rep.best_error;
            acc.add(rep);
        }
    } else {
#ifdef _OPENMP
#pragma omp parallel num_threads(cfg.threads)
        {
            TrialAccumulator local;
#pragma omp for schedule(static)
            for (int64_t i = 0; i < static_cast<int64_t>(n); ++i) {
                const TrialReport rep = run_trial(cfg.seed, static_cast<uint64_t>(i));
                best_errors[static_cast<uint64_t>(i)] = rep.best_error;
                local.add(rep);
            }
#pragma omp critical
            acc.merge(local);
        }
#endif
    }

    // reduce error statistics in trial order so the result does not depend
    // on the thread count
    BenchReport report;
    report.config = cfg;
    report.counters = acc.counters;
    report.histogram = acc.histogram;
    report.max_solutions_per_trial = acc.max_solutions;

    std::vector<double> kept;
    kept.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
        if (best_errors[i] <= cfg.failure_threshold) {
            kept.push_back(best_errors[i]);
        }
    }
    report.errors.count = kept.size();
    if (!kept.empty()) {
        double sum = 0.0;
        double mx = 0.0;
        for (double e : kept) {
            sum += e;
            mx = std::max(mx, e);
        }
        report.errors.mean = sum / static_cast<double>(kept.size());
        report.errors.max = mx;
        std::sort(kept.begin(), kept.end());
        const size_t mid = kept.size() / 2;
        report.errors.median =
            (kept.size() % 2 == 1) ? kept[mid] : 0.5 * (kept[mid - 1] + kept[mid]);
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

TimingReport run_timing(const BenchConfig &cfg) {
    using clock = std::chrono::steady_clock;
    const uint64_t n = cfg.samples;
    const uint64_t reps = std::max<uint64_t>(1, cfg.timing_reps);

    std::vector<double> per_sample_ns(n);
    for (uint64_t i = 0; i < n; ++i) {
        const GroundTruthInstance g = gen_instance(cfg.seed, i);
        // warmup pass, excluded from the measurement
        SolverOutput warm = solve_p3p(g.inst);
        opt_barrier(warm);

        const auto t0 = clock::now();
        for (uint64_t k = 0; k < reps; ++k) {
            SolverOutput out = solve_p3p(g.inst);
            opt_barrier(out);
        }
        const auto t1 = clock::now();
        per_sample_ns[i] =
            std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(reps);
    }

    TimingReport rep;
    rep.samples = n;
    rep.reps = reps;
    if (n == 0) {
        return rep;
    }
    double sum = 0.0;
    double mn = per_sample_ns[0];
    double mx = per_sample_ns[0];
    for (double v : per_sample_ns) {
        sum += v;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    rep.mean_ns = sum / static_cast<double>(n);
    rep.min_ns = mn;
    rep.max_ns = mx;
    std::sort(per_sample_ns.begin(), per_sample_ns.end());
    const size_t mid = per_sample_ns.size() / 2;
    rep.median_ns = (per_sample_ns.size() % 2 == 1)
                        ? per_sample_ns[mid]
                        : 0.5 * (per_sample_ns[mid - 1] + per_sample_ns[mid]);
    return rep;
}

} // namespace p3p
