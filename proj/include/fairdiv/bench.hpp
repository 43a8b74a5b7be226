#ifndef FAIRDIV_BENCH_HPP
#define FAIRDIV_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

struct BenchmarkRecord {
    std::string protocol;
    std::size_t n = 0;
    std::optional<Rational> eps;
    std::uint64_t seed = 0;
    std::uint64_t total_queries = 0;  // eval + cut
    std::uint64_t eval = 0;
    std::uint64_t cut = 0;
    std::uint64_t super_eval = 0;
    std::uint64_t super_cut = 0;
    double wall_time = 0;  // seconds
    std::size_t cuts_produced = 0;
    std::string status = "ok";  // or the failure message

    bool ok() const { return status == "ok"; }
};

struct BenchmarkSpec {
    std::string protocol;
    std::vector<std::size_t> ladder;
    std::vector<std::uint64_t> seeds;
    std::optional<Rational> eps;
    std::string kind = "uniform";  // instance kind: uniform or random-piecewise
};

// One record per (n, seed). A failing run is recorded and the sweep continues.
std::vector<BenchmarkRecord> run_benchmark(const BenchmarkSpec& spec);

// Median total_queries per n over successful runs.
std::vector<std::pair<std::size_t, double>> median_queries(const std::vector<BenchmarkRecord>& records);
// Least-squares slope of log(median) against log(n). Needs two distinct n.
double fit_loglog_slope(const std::vector<BenchmarkRecord>& records);

void write_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records);
std::vector<BenchmarkRecord> read_csv(std::istream& in);

// Log-log polyline of median queries against n with the fitted slope in the title.
std::string render_svg(const std::vector<BenchmarkRecord>& records, const std::string& title);

}  // namespace fairdiv

#endif  // FAIRDIV_BENCH_HPP
