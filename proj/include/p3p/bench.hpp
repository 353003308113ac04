#ifndef P3P_BENCH_HPP
#define P3P_BENCH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "p3p/solver.hpp"
#include "p3p/synthetic.hpp"

// Accuracy, solution-classification, and timing evaluation over synthetic
// trials. The accuracy run fans trials across OpenMP workers (or runs the
// serial reference path for threads <= 1); results are bit-identical either
// way because every trial's input comes from its own counter-keyed stream
// and the reduction is performed in trial order.

namespace p3p {

// Entrywise-L1 rotation and translation errors against a reference pose.
struct ErrorPair {
    double xi_r = 0.0;
    double xi_t = 0.0;
};

ErrorPair error_metrics(const Pose &sol, const Mat3 &R_gt, const Vec3 &t_gt);

// Per-trial classification counters.
//   valid        poses emitted by the solver
//   unique       valid poses passing all validity conditions, deduplicated
//   duplicates   valid poses removed as near-copies of a unique one
//   good         1 when the trial has at least one unique solution
//   no_solution  1 - good
//   ground_truth 1 when some solution is within 1e-6 (L1) of the reference
//   incorrect    valid poses failing the validity conditions
struct TrialReport {
    uint32_t valid = 0;
    uint32_t unique = 0;
    uint32_t duplicates = 0;
    uint32_t good = 0;
    uint32_t no_solution = 0;
    uint32_t ground_truth = 0;
    uint32_t incorrect = 0;
    double best_error = 0.0; // min over solutions of xi_R + xi_t; +inf if none
};

TrialReport classify_trial(const SolverOutput &solutions, const P3PInstance &inst,
                           const Mat3 &R_gt, const Vec3 &t_gt);

struct BenchConfig {
    uint64_t samples = 100000;
    uint64_t seed = 1;
    int threads = 1;
    uint64_t timing_reps = 100;
    double failure_threshold = 1e-6;
};

struct Counters {
    uint64_t valid = 0;
    uint64_t unique = 0;
    uint64_t duplicates = 0;
    uint64_t good = 0;
    uint64_t no_solution = 0;
    uint64_t ground_truth = 0;
    uint64_t incorrect = 0;

    bool operator==(const Counters &) const = default;
};

// Statistics of xi_R + xi_t over non-failure trials.
struct ErrorStats {
    uint64_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;

    bool operator==(const ErrorStats &) const = default;
};

// log10 error histogram over trials with at least one solution.
struct Histogram {
    static constexpr double kBinLow = -16.0;
    static constexpr double kBinWidth = 0.25;
    static constexpr int kBins = 64;
    std::array<uint64_t, kBins> counts{};

    bool operator==(const Histogram &) const = default;
};

struct BenchReport {
    BenchConfig config;
    Counters counters;
    ErrorStats errors;
    Histogram histogram;
    uint64_t max_solutions_per_trial = 0;
    double wall_seconds = 0.0;
};

BenchReport run_benchmark(const BenchConfig &cfg);

// Wall time per solve, averaged over timing_reps repetitions per sample
// after one warmup solve, strictly single-threaded. Nanoseconds.
struct TimingReport {
    uint64_t samples = 0;
    uint64_t reps = 0;
    double mean_ns = 0.0;
    double median_ns = 0.0;
    double min_ns = 0.0;
    double max_ns = 0.0;
};

TimingReport run_timing(const BenchConfig &cfg);

} // namespace p3p

#endif
