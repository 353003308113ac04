#include "p3p/io.hpp"

#include <fstream>
#include <sstream>

namespace p3p {

using nlohmann::json;

std::optional<P3PInstance> parse_instance_json(const json &j, std::string *err) {
    if (!j.contains("world") || !j.contains("image")) {
        *err = "instance JSON must contain 'world' and 'image'";
        return std::nullopt;
    }
    const auto &world = j["world"];
    const auto &image = j["image"];
    if (!world.is_array() || world.size() != 3 || !image.is_array() || image.size() != 3) {
        *err = "'world' and 'image' must be arrays of three points";
        return std::nullopt;
    }
    Vec3 X[3];
    double uv[3][2];
    for (int i = 0; i < 3; ++i) {
        if (!world[i].is_array() || world[i].size() != 3) {
            *err = "world points must have three coordinates";
            return std::nullopt;
        }
        if (!image[i].is_array() || image[i].size() != 2) {
            *err = "image points must have two coordinates";
            return std::nullopt;
        }
        X[i] = Vec3{world[i][0].get<double>(), world[i][1].get<double>(),
                    world[i][2].get<double>()};
        uv[i][0] = image[i][0].get<double>();
        uv[i][1] = image[i][1].get<double>();
    }
    return from_image_points(X[0], X[1], X[2], uv[0][0], uv[0][1], uv[1][0], uv[1][1], uv[2][0],
                             uv[2][1]);
}

std::optional<P3PInstance> load_instance_file(const std::string &path, std::string *err) {
    std::ifstream in(path);
    if (!in) {
        *err = "cannot open " + path;
        return std::nullopt;
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        *err = std::string("invalid JSON: ") + e.what();
        return std::nullopt;
    }
    return parse_instance_json(j, err);
}

json solver_output_to_json(const SolverOutput &out) {
    json solutions = json::array();
    for (int i = 0; i < out.count; ++i) {
        const PoseSolution &s = out.solutions[i];
        json entry;
        entry["R"] = s.pose.R.m;
        entry["t"] = {s.pose.t.x, s.pose.t.y, s.pose.t.z};
        entry["depths"] = {s.depths.d1, s.depths.d2, s.depths.d3};
        solutions.push_back(entry);
    }
    return json{{"solutions", solutions}, {"diagnostic", diagnostic_name(out.diagnostic)}};
}

namespace {

json config_to_json(const BenchConfig &cfg) {
    return json{{"samples", cfg.samples},
                {"seed", cfg.seed},
                {"threads", cfg.threads},
                {"timing_reps", cfg.timing_reps},
                {"failure_threshold", cfg.failure_threshold}};
}

} // namespace

json bench_report_to_json(const BenchReport &report) {
    json j;
    j["errors"] = {{"mean", report.errors.mean},
                   {"median", report.errors.median},
                   {"max", report.errors.max},
                   {"count", report.errors.count}};
    j["counters"] = {{"valid", report.counters.valid},
                     {"unique", report.counters.unique},
                     {"duplicates", report.counters.duplicates},
                     {"good", report.counters.good},
                     {"no_solution", report.counters.no_solution},
                     {"ground_truth", report.counters.ground_truth},
                     {"incorrect", report.counters.incorrect}};
    j["histogram"] = {{"bin_low", Histogram::kBinLow},
                      {"width", Histogram::kBinWidth},
                      {"counts", report.histogram.counts}};
    j["config"] = config_to_json(report.config);
    j["config"]["wall_seconds"] = report.wall_seconds;
    j["config"]["max_solutions_per_trial"] = report.max_solutions_per_trial;
    return j;
}

json timing_report_to_json(const TimingReport &timing, const BenchConfig &cfg) {
    json j;
    j["timing"] = {{"mean_ns", timing.mean_ns},
                   {"median_ns", timing.median_ns},
                   {"min_ns", timing.min_ns},
                   {"max_ns", timing.max_ns}};
    j["config"] = config_to_json(cfg);
    return j;
}

std::string histogram_to_csv(const Histogram &hist) {
    std::ostringstream out;
    out << "bin_center_log10,count\n";
    for (int i = 0; i < Histogram::kBins; ++i) {
        const double center = Histogram::kBinLow + (i + 0.5) * Histogram::kBinWidth;
        out << center << "," << hist.counts[i] << "\n";
    }
    return out.str();
}

bool write_text_file(const std::string &path, const std::string &content, std::string *err) {
    std::ofstream out(path);
    if (!out) {
        *err = "cannot open " + path + " for writing";
        return false;
    }
    out << content;
    if (!out.good()) {
        *err = "write failed for " + path;
        return false;
    }
    return true;
}

} // namespace p3p
