// Command-line front end: accuracy benchmark, timing benchmark, and
// single-instance solving over the JSON wire formats.

#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "p3p/bench.hpp"
#include "p3p/io.hpp"
#include "p3p/solver.hpp"

namespace {

int run_bench(const p3p::BenchConfig &cfg, const std::string &out_path,
              const std::string &hist_csv_path) {
    const p3p::BenchReport report = p3p::run_benchmark(cfg);
    const nlohmann::json j = p3p::bench_report_to_json(report);

    std::string err;
    if (!p3p::write_text_file(out_path, j.dump(2) + "\n", &err)) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 2;
    }
    if (!hist_csv_path.empty() &&
        !p3p::write_text_file(hist_csv_path, p3p::histogram_to_csv(report.histogram), &err)) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 2;
    }

    std::printf("samples span  %llu (seed %llu, %d thread%s)\n",
                static_cast<unsigned long long>(cfg.samples),
                static_cast<unsigned long long>(cfg.seed), cfg.threads,
                cfg.threads == 1 ? "" : "s");
    std::printf("ground truth  %llu\n",
                static_cast<unsigned long long>(report.counters.ground_truth));
    std::printf("good          %llu\n", static_cast<unsigned long long>(report.counters.good));
    std::printf("incorrect     %llu\n",
                static_cast<unsigned long long>(report.counters.incorrect));
    std::printf("error mean    %.6e\n", report.errors.mean);
    std::printf("error median  %.6e\n", report.errors.median);
    std::printf("error max     %.6e\n", report.errors.max);
    std::printf("wall time     %.3f s\n", report.wall_seconds);
    std::printf("report        %s\n", out_path.c_str());
    return 0;
}

int run_time(const p3p::BenchConfig &cfg, const std::string &out_path) {
    const p3p::TimingReport timing = p3p::run_timing(cfg);
    const nlohmann::json j = p3p::timing_report_to_json(timing, cfg);

    std::string err;
    if (!p3p::write_text_file(out_path, j.dump(2) + "\n", &err)) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 2;
    }
    std::printf("mean    %.1f ns\n", timing.mean_ns);
    std::printf("median  %.1f ns\n", timing.median_ns);
    std::printf("min     %.1f ns\n", timing.min_ns);
    std::printf("max     %.1f ns\n", timing.max_ns);
    std::printf("report  %s\n", out_path.c_str());
    return 0;
}

int run_solve(const std::string &input_path, bool as_json) {
    std::string err;
    const auto inst = p3p::load_instance_file(input_path, &err);
    if (!inst) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 2;
    }
    const p3p::SolverOutput out = p3p::solve_p3p(*inst);
    if (as_json) {
        std::printf("%s\n", p3p::solver_output_to_json(out).dump(2).c_str());
        return 0;
    }
    std::printf("diagnostic: %s\n", p3p::diagnostic_name(out.diagnostic));
    std::printf("solutions:  %d\n", out.count);
    for (int i = 0; i < out.count; ++i) {
        const p3p::PoseSolution &s = out.solutions[i];
        std::printf("-- solution %d (depths %.9g %.9g %.9g)\n", i + 1, s.depths.d1, s.depths.d2,
                    s.depths.d3);
        for (int r = 0; r < 3; ++r) {
            std::printf("   R  % .12f % .12f % .12f\n", s.pose.R(r, 0), s.pose.R(r, 1),
                        s.pose.R(r, 2));
        }
        std::printf("   t  % .12f % .12f % .12f\n", s.pose.t.x, s.pose.t.y, s.pose.t.z);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Perspective-three-point solver and evaluation harness"};
    app.require_subcommand(1);

    p3p::BenchConfig cfg;
    std::string out_path = "report.json";
    std::string hist_csv_path;
    std::string input_path;
    bool as_json = false;

    auto *bench = app.add_subcommand("bench", "accuracy and classification benchmark");
    bench->add_option("--samples", cfg.samples, "number of synthetic trials");
    bench->add_option("--seed", cfg.seed, "random stream seed");
    bench->add_option("--threads", cfg.threads, "worker threads (1 = serial reference)");
    bench->add_option("--out", out_path, "report JSON path")->required();
    bench->add_option("--hist", hist_csv_path, "also write the histogram as CSV");

    auto *time = app.add_subcommand("time", "single-threaded timing benchmark");
    time->add_option("--samples", cfg.samples, "number of synthetic samples");
    time->add_option("--seed", cfg.seed, "random stream seed");
    time->add_option("--reps", cfg.timing_reps, "repetitions per sample");
    time->add_option("--out", out_path, "report JSON path")->required();

    auto *solve = app.add_subcommand("solve", "solve one instance from JSON");
    solve->add_option("--input", input_path, "instance JSON file")->required();
    solve->add_flag("--json", as_json, "emit the solution as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    if (cfg.samples < 1 || cfg.timing_reps < 1 || cfg.threads < 1) {
        std::fprintf(stderr, "error: samples, reps, and threads must be >= 1\n");
        return 2;
    }

    if (bench->parsed()) {
        return run_bench(cfg, out_path, hist_csv_path);
    }
    if (time->parsed()) {
        return run_time(cfg, out_path);
    }
    return run_solve(input_path, as_json);
}
