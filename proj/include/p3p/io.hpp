#ifndef P3P_IO_HPP
#define P3P_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "p3p/bench.hpp"
#include "p3p/conic.hpp"
#include "p3p/solver.hpp"

// JSON / CSV wire formats used by the CLI.
//
// Instance:  {"world": [[x,y,z] x3], "image": [[u,v] x3]}
// Solution:  {"solutions": [{"R": [9 row-major], "t": [3], "depths": [3]}],
//             "diagnostic": "<name>"}
// Report:    {"errors": {...}, "counters": {...}, "histogram": {...},
//             "timing": {...}, "config": {...}}

namespace p3p {

std::optional<P3PInstance> parse_instance_json(const nlohmann::json &j, std::string *err);
std::optional<P3PInstance> load_instance_file(const std::string &path, std::string *err);

nlohmann::json solver_output_to_json(const SolverOutput &out);
nlohmann::json bench_report_to_json(const BenchReport &report);
nlohmann::json timing_report_to_json(const TimingReport &timing, const BenchConfig &cfg);

// columns: bin_center_log10, count
std::string histogram_to_csv(const Histogram &hist);

bool write_text_file(const std::string &path, const std::string &content, std::string *err);

} // namespace p3p

#endif
