#include "fairdiv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fairdiv/generators.hpp"
#include "fairdiv/protocols.hpp"

namespace fairdiv {

namespace {

const char* const kHeader =
    "protocol,n,eps,seed,total_queries,eval,cut,super_eval,super_cut,wall_time,cuts_produced,status";

std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::vector<BenchmarkRecord> run_benchmark(const BenchmarkSpec& spec) {
    const ProtocolFn protocol = protocol_by_name(spec.protocol, spec.eps);
    if (spec.kind != "uniform" && spec.kind != "random-piecewise") {
        throw std::invalid_argument("unknown instance kind '" + spec.kind + "'");
    }
    std::vector<BenchmarkRecord> out;
    for (std::size_t n : spec.ladder) {
        for (std::uint64_t seed : spec.seeds) {
            BenchmarkRecord rec;
            rec.protocol = spec.protocol;
            rec.n = n;
            rec.eps = spec.eps;
            rec.seed = seed;
            const Instance inst = spec.kind == "uniform" ? uniform_instance(n) : random_piecewise_instance(n, seed);
            Oracle oracle = Oracle::honest(inst);
            const auto start = std::chrono::steady_clock::now();
            try {
                const ProtocolResult r = protocol(oracle);
                rec.cuts_produced = r.ledger.registered_cuts().size();
            } catch (const std::exception& e) {
                rec.status = sanitize(e.what());
            }
            rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const QueryLedger& l = oracle.ledger();
            rec.eval = l.total_eval();
            rec.cut = l.total_cut();
            rec.total_queries = l.total_actual();
            rec.super_eval = l.total_super_eval();
            rec.super_cut = l.total_super_cut();
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<std::pair<std::size_t, double>> median_queries(const std::vector<BenchmarkRecord>& records) {
    std::map<std::size_t, std::vector<double>> by_n;
    for (const auto& r : records) {
        if (r.ok()) by_n[r.n].push_back(static_cast<double>(r.total_queries));
    }
    std::vector<std::pair<std::size_t, double>> out;
    for (auto& [n, v] : by_n) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size();
        out.emplace_back(n, m % 2 == 1 ? v[m / 2] : (v[m / 2 - 1] + v[m / 2]) / 2);
    }
    return out;
}

double fit_loglog_slope(const std::vector<BenchmarkRecord>& records) {
    const auto med = median_queries(records);
    if (med.size() < 2) throw std::invalid_argument("slope fit needs at least two ladder rungs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, q] : med) {
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(std::max(q, 1.0));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(med.size());
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

void write_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records) {
    out << kHeader << '\n';
    for (const auto& r : records) {
        out << r.protocol << ',' << r.n << ',' << (r.eps ? r.eps->str() : "") << ',' << r.seed << ','
            << r.total_queries << ',' << r.eval << ',' << r.cut << ',' << r.super_eval << ',' << r.super_cut << ','
            << std::setprecision(9) << r.wall_time << ',' << r.cuts_produced << ',' << sanitize(r.status) << '\n';
    }
}

std::vector<BenchmarkRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader) throw std::invalid_argument("unexpected benchmark CSV header");
    std::vector<BenchmarkRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != 12) throw std::invalid_argument("benchmark CSV row has " + std::to_string(cells.size()) + " fields");
        BenchmarkRecord r;
        r.protocol = cells[0];
        r.n = std::stoul(cells[1]);
        if (!cells[2].empty()) r.eps = Rational::parse(cells[2]);
        r.seed = std::stoull(cells[3]);
        r.total_queries = std::stoull(cells[4]);
        r.eval = std::stoull(cells[5]);
        r.cut = std::stoull(cells[6]);
        r.super_eval = std::stoull(cells[7]);
        r.super_cut = std::stoull(cells[8]);
        r.wall_time = std::stod(cells[9]);
        r.cuts_produced = std::stoul(cells[10]);
        r.status = cells[11];
        out.push_back(std::move(r));
    }
    return out;
}

std::string render_svg(const std::vector<BenchmarkRecord>& records, const std::string& title) {
    const auto med = median_queries(records);
    constexpr double w = 640, h = 420, pad = 60;
    std::ostringstream svg;
    svg << std::fixed << std::setprecision(2);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::string heading = title;
    if (med.size() >= 2) {
        std::ostringstream s;
        s << std::setprecision(3) << fit_loglog_slope(records);
        heading += " (slope " + s.str() + ")";
    }
    svg << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << heading << "</text>\n";
    svg << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\"" << h - pad
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 15 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\">log n</text>\n";
    svg << "<text x=\"15\" y=\"" << h / 2 << "\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 15 " << h / 2 << ")\">log median queries</text>\n";
    if (!med.empty()) {
        double x0 = std::log(static_cast<double>(med.front().first));
        double x1 = std::log(static_cast<double>(med.back().first));
        double y0 = 1e300, y1 = -1e300;
        for (const auto& [n, q] : med) {
            y0 = std::min(y0, std::log(std::max(q, 1.0)));
            y1 = std::max(y1, std::log(std::max(q, 1.0)));
        }
        if (x1 == x0) x1 = x0 + 1;
        if (y1 == y0) y1 = y0 + 1;
        auto px = [&](double x) { return pad + (x - x0) / (x1 - x0) * (w - 2 * pad); };
        auto py = [&](double y) { return h - pad - (y - y0) / (y1 - y0) * (h - 2 * pad); };
        svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
        for (const auto& [n, q] : med) {
            svg << px(std::log(static_cast<double>(n))) << ',' << py(std::log(std::max(q, 1.0))) << ' ';
        }
        svg << "\"/>\n";
        for (const auto& [n, q] : med) {
            const double x = px(std::log(static_cast<double>(n)));
            const double y = py(std::log(std::max(q, 1.0)));
            svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"steelblue\"/>\n";
            svg << "<text x=\"" << x << "\" y=\"" << h - pad + 16 << "\" text-anchor=\"middle\" "
                << "font-family=\"sans-serif\" font-size=\"10\">" << n << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace fairdiv
