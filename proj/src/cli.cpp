#include "fairdiv/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fairdiv/bench.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/hardness.hpp"
#include "fairdiv/hierarchy.hpp"
#include "fairdiv/json_io.hpp"
#include "fairdiv/predicates.hpp"
#include "fairdiv/protocols.hpp"

namespace fairdiv {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::optional<Rational> parse_opt(const std::string& text) {
    if (text.empty()) return std::nullopt;
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument&) {
        throw UsageError("not a rational: '" + text + "'");
    }
}

std::vector<std::size_t> parse_ladder(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stoul(cell));
        } catch (const std::exception&) {
            throw UsageError("bad ladder entry '" + cell + "'");
        }
    }
    if (out.empty()) throw UsageError("empty ladder");
    return out;
}

void emit(std::ostream& out, const std::string& path, const Json& j) {
    if (path.empty() || path == "-") {
        out << j.dump(2) << '\n';
    } else {
        write_json_file(path, j);
    }
}

struct GenOpts {
    std::size_t n = 0;
    std::string kind;
    std::uint64_t seed = 0;
    std::string matrix;
    std::string out;
    std::string allocation_out;
};

int cmd_gen(const GenOpts& o, std::ostream& out) {
    Instance inst;
    std::optional<Allocation> alloc;
    if (o.kind == "uniform") {
        inst = uniform_instance(o.n);
    } else if (o.kind == "random-piecewise") {
        inst = random_piecewise_instance(o.n, o.seed);
    } else if (o.kind == "matrix") {
        ValueMatrix m;
        if (o.matrix.empty() || o.matrix == "identity") {
            m.assign(o.n, std::vector<Rational>(o.n));
            for (std::size_t i = 0; i < o.n; ++i) m[i][i] = Rational(1);
        } else if (o.matrix == "random") {
            Rng rng(o.seed);
            m = random_value_matrix(o.n, rng);
        } else {
            m = matrix_from_json(read_json_file(o.matrix));
        }
        Realized r = realize_value_matrix(m);
        inst = std::move(r.instance);
        alloc = std::move(r.allocation);
    } else if (o.kind == "clb2-hard") {
        inst = clb2_hard_instance(o.n, o.seed);
    } else {
        throw UsageError("unknown kind '" + o.kind + "'");
    }
    if (inst.n() == 0) throw UsageError("--n must be positive");
    emit(out, o.out, instance_to_json(inst));
    if (!o.allocation_out.empty()) {
        if (!alloc) throw UsageError("--allocation-out only applies to kind=matrix");
        write_json_file(o.allocation_out, allocation_to_json(*alloc));
    }
    return kExitOk;
}

struct RunOpts {
    std::string protocol;
    std::string instance;
    std::string eps;
    std::uint64_t seed = 0;
    std::string out;
    bool audit = false;
};

int cmd_run(const RunOpts& o, std::ostream& out) {
    const Instance inst = instance_from_json(read_json_file(o.instance));
    const ProtocolFn protocol = protocol_by_name(o.protocol, parse_opt(o.eps));
    Oracle oracle = Oracle::honest(inst);
    oracle.set_audit(o.audit);
    const ProtocolResult r = protocol(oracle);
    const fs::path dir(o.out);
    write_json_file(dir / "allocation.json", allocation_to_json(r.allocation));
    write_json_file(dir / "ledger.json", ledger_to_json(r.ledger));
    write_json_file(dir / "trace.json", trace_to_json(r.trace));
    out << o.protocol << ": n=" << inst.n() << " queries=" << r.ledger.total_actual()
        << " (eval " << r.ledger.total_eval() << ", cut " << r.ledger.total_cut() << ") seed=" << o.seed << '\n';
    return kExitOk;
}

struct CheckOpts {
    std::string allocation;
    std::string instance;
    std::string notion;
    std::size_t k = 0;
    std::string eps;
    std::string delta;
    std::string out;
};

int cmd_check(const CheckOpts& o, std::ostream& out) {
    const Instance inst = instance_from_json(read_json_file(o.instance));
    const Allocation a = allocation_from_json(read_json_file(o.allocation));
    if (a.n() != inst.n()) throw UsageError("allocation and instance disagree on n");
    const Notion notion = parse_notion(o.notion);
    const std::size_t k = o.k == 0 ? inst.n() : o.k;
    FairnessReport report{notion, Verdict::pass, std::nullopt};
    switch (notion) {
        case Notion::proportional: report = is_proportional(a, inst); break;
        case Notion::envy_free: report = is_envy_free(a, inst); break;
        case Notion::super_ef: report = is_super_ef(a, inst); break;
        case Notion::eps_perfect: {
            const auto eps = parse_opt(o.eps);
            if (!eps) throw UsageError("eps-perfect needs --eps");
            report = is_eps_perfect(a, inst, *eps);
            break;
        }
        case Notion::chb: report = check_chb(a, inst, k); break;
        case Notion::clb: report = check_clb(a, inst, k); break;
        case Notion::delta_clb: {
            const auto delta = parse_opt(o.delta);
            if (!delta) throw UsageError("delta-clb needs --delta");
            report = check_delta_clb(a, inst, k, *delta);
            break;
        }
    }
    Json j = report_to_json(report);
    j["k"] = k;
    emit(out, o.out, j);
    return report.pass() ? kExitOk : kExitFail;
}

struct HierarchyOpts {
    std::size_t n = 0;
    std::string name;
    std::size_t k = 1;
    std::string out;
};

int cmd_hierarchy(const HierarchyOpts& o, std::ostream& out) {
    const Realized r = hierarchy_case(o.name, o.n, o.k);
    Json verdicts = Json::array();
    verdicts.push_back(report_to_json(is_proportional(r.allocation, r.instance)));
    verdicts.push_back(report_to_json(is_envy_free(r.allocation, r.instance)));
    verdicts.push_back(report_to_json(is_super_ef(r.allocation, r.instance)));
    for (std::size_t k = 1; k <= o.n; ++k) {
        Json c = report_to_json(check_chb(r.allocation, r.instance, k));
        c["k"] = k;
        verdicts.push_back(c);
        Json l = report_to_json(check_clb(r.allocation, r.instance, k));
        l["k"] = k;
        verdicts.push_back(l);
    }
    const fs::path dir(o.out);
    write_json_file(dir / "instance.json", instance_to_json(r.instance));
    write_json_file(dir / "allocation.json", allocation_to_json(r.allocation));
    write_json_file(dir / "matrix.json", matrix_to_json(r.matrix));
    write_json_file(dir / "report.json", Json{{"case", o.name}, {"n", o.n}, {"k", o.k}, {"verdicts", verdicts}});
    for (const auto& v : verdicts) {
        out << v["notion"].get<std::string>();
        if (v.contains("k")) out << '-' << v["k"].get<std::size_t>();
        out << ": " << v["verdict"].get<std::string>() << '\n';
    }
    return kExitOk;
}

struct HardnessOpts {
    std::string demo;
    std::size_t n = 0;
    std::string protocol = "even-paz";
    std::string eps;
    std::size_t seeds = 10;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_hardness(const HardnessOpts& o, std::ostream& out) {
    const fs::path dir(o.out);
    const ProtocolFn protocol = protocol_by_name(o.protocol, parse_opt(o.eps));
    if (o.demo == "adversary") {
        const AdversarySession s = adversary_session(o.n, protocol);
        const GrowthReport g = audit_partition_growth(s);
        const auto witnesses = active_intervals_of_length(s, Rational(1, static_cast<long>(o.n)));
        Json w = Json::array();
        for (const auto& iv : witnesses) {
            w.push_back(iv ? Json::array({to_json(iv->lo), to_json(iv->hi)}) : Json(nullptr));
        }
        write_json_file(dir / "allocation.json", allocation_to_json(s.result.allocation));
        write_json_file(dir / "ledger.json", ledger_to_json(s.result.ledger));
        write_json_file(dir / "growth.json", growth_to_json(g));
        write_json_file(dir / "active_witnesses.json", w);
        out << "growth audit: " << (g.pass ? "pass" : "fail") << " (" << g.steps << " steps, max growth "
            << g.max_growth << ")\n";
        return g.pass ? kExitOk : kExitFail;
    }
    if (o.demo == "clb2") {
        Json rows = Json::array();
        out << "seed,clb2,implication,max_deviation\n";
        for (std::size_t s = 0; s < o.seeds; ++s) {
            const std::uint64_t seed = o.seed + s;
            const Instance inst = clb2_hard_instance(o.n, seed);
            Oracle oracle = Oracle::honest(inst);
            Json row{{"seed", seed}};
            try {
                const ProtocolResult r = protocol(oracle);
                const FairnessReport clb2 = check_clb(r.allocation, inst, std::min<std::size_t>(2, inst.n()));
                const ImplicationReport imp = exact_division_implication_check(r.allocation, inst);
                row["clb2"] = verdict_name(clb2.verdict);
                row["implication"] = implication_to_json(imp);
                out << seed << ',' << verdict_name(clb2.verdict) << ',' << (imp.all_hold() ? "hold" : "broken")
                    << ',' << imp.max_deviation() << '\n';
            } catch (const std::exception& e) {
                row["error"] = e.what();
                out << seed << ",error,," << '\n';
            }
            rows.push_back(row);
        }
        write_json_file(dir / "clb2_table.json", Json{{"n", o.n}, {"protocol", o.protocol}, {"rows", rows}});
        return kExitOk;
    }
    throw UsageError("unknown demo '" + o.demo + "'");
}

struct BenchOpts {
    std::string protocol;
    std::string ladder;
    std::size_t seeds = 3;
    std::uint64_t seed = 0;
    std::string eps;
    std::string kind = "uniform";
    std::string out;
    std::string svg;
};

int cmd_bench(const BenchOpts& o, std::ostream& out) {
    BenchmarkSpec spec;
    spec.protocol = o.protocol;
    spec.ladder = parse_ladder(o.ladder);
    for (std::size_t s = 0; s < o.seeds; ++s) spec.seeds.push_back(o.seed + s);
    spec.eps = parse_opt(o.eps);
    spec.kind = o.kind;
    const auto records = run_benchmark(spec);
    if (o.out.empty() || o.out == "-") {
        write_csv(out, records);
    } else {
        const fs::path p(o.out);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        std::ofstream f(p);
        write_csv(f, records);
    }
    if (!o.svg.empty()) {
        const fs::path p(o.svg);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        std::ofstream f(p);
        f << render_svg(records, o.protocol + " queries");
    }
    if (median_queries(records).size() >= 2) out << "slope " << fit_loglog_slope(records) << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cake-cutting protocols, fairness checks and query accounting"};
    app.require_subcommand(1);
    const std::uint64_t seed = default_seed(1);

    GenOpts gen;
    gen.seed = seed;
    auto* g = app.add_subcommand("gen", "Generate an instance");
    g->add_option("--n", gen.n, "Number of agents")->required();
    g->add_option("--kind", gen.kind, "uniform | random-piecewise | matrix | clb2-hard")->required();
    g->add_option("--seed", gen.seed, "Seed (default FAIRDIV_SEED or 1)");
    g->add_option("--matrix", gen.matrix, "For kind=matrix: identity, random, or a JSON file");
    g->add_option("--out", gen.out, "Output file (default stdout)");
    g->add_option("--allocation-out", gen.allocation_out, "For kind=matrix: also write the realising allocation");

    RunOpts run;
    run.seed = seed;
    auto* r = app.add_subcommand("run", "Run a protocol on an instance");
    r->add_option("--protocol", run.protocol, "cut-choose | even-paz | last-dim | alg1 | alg2")->required();
    r->add_option("--instance", run.instance, "Instance JSON")->required();
    r->add_option("--eps", run.eps, "Epsilon as p/q (alg2)");
    r->add_option("--seed", run.seed, "Seed (protocols are deterministic; recorded only)");
    r->add_option("--out", run.out, "Output directory")->required();
    r->add_flag("--audit", run.audit, "Check every tracked value against the instance");

    CheckOpts check;
    auto* c = app.add_subcommand("check", "Check a fairness notion");
    c->add_option("--allocation", check.allocation, "Allocation JSON")->required();
    c->add_option("--instance", check.instance, "Instance JSON")->required();
    c->add_option("--notion", check.notion,
                  "proportional | envy-free | super-ef | eps-perfect | chb | clb | delta-clb")->required();
    c->add_option("--k", check.k, "Coalition size bound (default n)");
    c->add_option("--eps", check.eps, "Epsilon for eps-perfect");
    c->add_option("--delta", check.delta, "Delta for delta-clb");
    c->add_option("--out", check.out, "Report file (default stdout)");

    HierarchyOpts hier;
    auto* h = app.add_subcommand("hierarchy", "Build a separating example");
    h->add_option("--n", hier.n, "Number of agents")->required();
    h->add_option("--case", hier.name, "chb-strict | chb-not-ef | clb-strict | clb-not-ef | ef-not-clb2")->required();
    h->add_option("--k", hier.k, "k for the strictness cases");
    h->add_option("--out", hier.out, "Output directory")->required();

    HardnessOpts hard;
    hard.seed = seed;
    auto* hd = app.add_subcommand("hardness", "Adversary and hard-instance demonstrations");
    hd->add_option("--demo", hard.demo, "adversary | clb2")->required();
    hd->add_option("--n", hard.n, "Number of agents")->required();
    hd->add_option("--protocol", hard.protocol, "Protocol to run");
    hd->add_option("--eps", hard.eps, "Epsilon as p/q (alg2)");
    hd->add_option("--seeds", hard.seeds, "clb2: number of random instances");
    hd->add_option("--seed", hard.seed, "clb2: first seed");
    hd->add_option("--out", hard.out, "Output directory")->required();

    BenchOpts bench;
    bench.seed = seed;
    auto* b = app.add_subcommand("bench", "Query counts over an n ladder");
    b->add_option("--protocol", bench.protocol, "Protocol to run")->required();
    b->add_option("--ladder", bench.ladder, "Comma-separated n values")->required();
    b->add_option("--seeds", bench.seeds, "Seeds per rung");
    b->add_option("--seed", bench.seed, "First seed");
    b->add_option("--eps", bench.eps, "Epsilon as p/q (alg2)");
    b->add_option("--kind", bench.kind, "uniform | random-piecewise");
    b->add_option("--out", bench.out, "CSV file (default stdout)");
    b->add_option("--svg", bench.svg, "Also write a log-log SVG plot");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (g->parsed()) return cmd_gen(gen, out);
        if (r->parsed()) return cmd_run(run, out);
        if (c->parsed()) return cmd_check(check, out);
        if (h->parsed()) return cmd_hierarchy(hier, out);
        if (hd->parsed()) return cmd_hardness(hard, out);
        if (b->parsed()) return cmd_bench(bench, out);
    } catch (const SubroutineFailure& e) {
        err << "protocol failure: " << e.what() << '\n';
        return kExitProtocol;
    } catch (const ProtocolError& e) {
        err << "protocol failure: " << e.what() << '\n';
        return kExitProtocol;
    } catch (const InsufficientValue& e) {
        err << "protocol failure: " << e.what() << '\n';
        return kExitProtocol;
    } catch (const DegenerateResidue& e) {
        err << "protocol failure: " << e.what() << '\n';
        return kExitProtocol;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace fairdiv
