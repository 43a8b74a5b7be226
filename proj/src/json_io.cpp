#include "fairdiv/json_io.hpp"

#include <fstream>

namespace fairdiv {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

const Json& array(const Json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
    return j;
}

Json piece_to_json(const Piece& p) {
    Json out = Json::array();
    for (const auto& iv : p.intervals()) out.push_back(Json::array({to_json(iv.lo), to_json(iv.hi)}));
    return out;
}

Piece piece_from_json(const Json& j) {
    std::vector<Interval> ivs;
    for (const auto& pair : array(j, "piece")) {
        if (!pair.is_array() || pair.size() != 2) throw FormatError("interval must be a [lo, hi] pair");
        try {
            ivs.emplace_back(rational_from_json(pair[0]), rational_from_json(pair[1]));
        } catch (const DomainError& e) {
            throw FormatError(e.what());
        }
    }
    return Piece(std::move(ivs));
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw FormatError(e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw FormatError("rational must be a \"p/q\" string or an integer");
}

Json instance_to_json(const Instance& inst) {
    Json agents = Json::array();
    for (const auto& v : inst.agents) {
        Json b = Json::array();
        Json d = Json::array();
        for (const auto& x : v.breakpoints()) b.push_back(to_json(x));
        for (const auto& x : v.densities()) d.push_back(to_json(x));
        agents.push_back(Json{{"breakpoints", b}, {"densities", d}});
    }
    return Json{{"n", inst.n()}, {"agents", agents}};
}

Instance instance_from_json(const Json& j) {
    const Json& agents = array(field(j, "agents"), "agents");
    Instance inst;
    for (const auto& a : agents) {
        std::vector<Rational> b;
        std::vector<Rational> d;
        for (const auto& x : array(field(a, "breakpoints"), "breakpoints")) b.push_back(rational_from_json(x));
        for (const auto& x : array(field(a, "densities"), "densities")) d.push_back(rational_from_json(x));
        try {
            inst.agents.emplace_back(std::move(b), std::move(d));
        } catch (const InvalidValuation& e) {
            throw FormatError(std::string("agent ") + std::to_string(inst.n()) + ": " + e.what());
        }
    }
    if (j.contains("n")) {
        const Json& n = j.at("n");
        if (!n.is_number_integer() || n.get<long>() != static_cast<long>(inst.n())) {
            throw FormatError("\"n\" does not match the number of agents");
        }
    }
    return inst;
}

Json allocation_to_json(const Allocation& a) {
    Json pieces = Json::array();
    for (const auto& p : a.pieces) pieces.push_back(piece_to_json(p));
    return Json{{"pieces", pieces}};
}

Allocation allocation_from_json(const Json& j) {
    Allocation a;
    for (const auto& p : array(field(j, "pieces"), "pieces")) a.pieces.push_back(piece_from_json(p));
    return a;
}

Json matrix_to_json(const ValueMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        out.push_back(r);
    }
    return out;
}

ValueMatrix matrix_from_json(const Json& j) {
    ValueMatrix m;
    for (const auto& row : array(j, "matrix")) {
        std::vector<Rational> r;
        for (const auto& x : array(row, "matrix row")) r.push_back(rational_from_json(x));
        m.push_back(std::move(r));
    }
    return m;
}

Json ledger_to_json(const QueryLedger& ledger) {
    Json agents = Json::array();
    for (AgentId i = 0; i < ledger.agents(); ++i) {
        const auto& c = ledger.counts(i);
        agents.push_back(Json{{"agent", i},
                              {"eval", c.eval},
                              {"cut", c.cut},
                              {"actual", c.actual()},
                              {"super_eval", c.super_eval},
                              {"super_cut", c.super_cut}});
    }
    Json cuts = Json::array();
    for (const auto& x : ledger.registered_cuts()) cuts.push_back(to_json(x));
    return Json{{"agents", agents},
                {"totals",
                 {{"eval", ledger.total_eval()},
                  {"cut", ledger.total_cut()},
                  {"actual", ledger.total_actual()},
                  {"super_eval", ledger.total_super_eval()},
                  {"super_cut", ledger.total_super_cut()}}},
                {"tracked_intervals", ledger.tracked().size()},
                {"registered_cuts", cuts}};
}

Json report_to_json(const FairnessReport& report) {
    Json out{{"notion", notion_name(report.notion)}, {"verdict", verdict_name(report.verdict)}};
    if (report.witness) {
        const Witness& w = *report.witness;
        Json wj{{"agent", w.agent}, {"lhs", to_json(w.lhs)}, {"rhs", to_json(w.rhs)}};
        if (w.piece) wj["piece"] = *w.piece;
        if (!w.coalition.empty()) wj["coalition"] = w.coalition;
        out["witness"] = wj;
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

Json trace_to_json(const std::vector<TraceEvent>& trace) {
    Json out = Json::array();
    for (const auto& e : trace) {
        Json ej{{"kind", e.kind}};
        if (e.agent) ej["agent"] = *e.agent;
        if (e.piece) ej["piece"] = *e.piece;
        if (e.point) ej["point"] = to_json(*e.point);
        if (e.value) ej["value"] = to_json(*e.value);
        if (e.region) ej["region"] = piece_to_json(*e.region);
        out.push_back(ej);
    }
    return out;
}

Json growth_to_json(const GrowthReport& report) {
    return Json{{"pass", report.pass},
                {"steps", report.steps},
                {"max_growth", report.max_growth},
                {"final_sizes", report.final_sizes},
                {"queries", report.queries},
                {"violation", report.violation}};
}

Json implication_to_json(const ImplicationReport& report) {
    Json items = Json::array();
    for (const auto& e : report.equalities) {
        items.push_back(Json{{"what", e.what},
                             {"value", to_json(e.value)},
                             {"expected", to_json(e.expected)},
                             {"holds", e.holds()}});
    }
    return Json{{"all_hold", report.all_hold()},
                {"max_deviation", to_json(report.max_deviation())},
                {"equalities", items}};
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace fairdiv
