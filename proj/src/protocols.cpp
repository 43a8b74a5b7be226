#include "fairdiv/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fairdiv {

namespace {

Rational share(std::size_t n) { return Rational(1, static_cast<long>(n)); }

ProtocolResult finish(Oracle& oracle, std::vector<Piece> pieces, std::vector<TraceEvent> trace,
                      std::size_t subroutine_cuts = 0) {
    ProtocolResult r{Allocation{std::move(pieces)}, oracle.ledger(), std::move(trace), subroutine_cuts};
    const ValidationReport v = validate(r.allocation, true);
    if (!v.ok()) throw ProtocolError("protocol produced an invalid allocation: " + v.message);
    return r;
}

TraceEvent event(std::string kind) { return TraceEvent{std::move(kind), {}, {}, {}, {}, {}}; }

void even_paz_split(Oracle& oracle, const Interval& range, std::vector<AgentId> group,
                    std::vector<Piece>& pieces, std::vector<TraceEvent>& trace, bool whole_cake) {
    const std::size_t m = group.size();
    if (m == 1) {
        pieces[group.front()] = Piece{range};
        return;
    }
    const std::size_t k = m / 2;
    std::vector<std::pair<Rational, AgentId>> marks;
    for (AgentId i : group) {
        const Rational total = whole_cake ? Rational(1) : oracle.eval(i, range);
        const Rational x = oracle.cut(i, range.lo, total * Rational(static_cast<long>(k), static_cast<long>(m)));
        marks.emplace_back(x, i);
        TraceEvent e = event("mark");
        e.agent = i;
        e.point = x;
        trace.push_back(std::move(e));
    }
    std::sort(marks.begin(), marks.end());
    const Rational split = marks[k - 1].first;
    std::vector<AgentId> left;
    std::vector<AgentId> right;
    for (std::size_t r = 0; r < m; ++r) (r < k ? left : right).push_back(marks[r].second);
    even_paz_split(oracle, Interval(range.lo, split), std::move(left), pieces, trace, false);
    even_paz_split(oracle, Interval(split, range.hi), std::move(right), pieces, trace, false);
}

// Shared final stage of both algorithms: agents repeatedly mark the residue,
// the leftmost mark wins its prefix plus its favourite remaining piece.
void cut_and_match(Oracle& oracle, std::vector<Piece> available, Piece residue, std::vector<Piece>& out,
                   std::vector<TraceEvent>& trace) {
    const std::size_t n = oracle.agents();
    const Rational target = share(n);
    std::vector<AgentId> active(n);
    std::iota(active.begin(), active.end(), 0);
    std::vector<bool> taken(available.size(), false);

    auto favourite = [&](AgentId i) {
        std::size_t best = available.size();
        Rational best_value(-1);
        for (std::size_t b = 0; b < available.size(); ++b) {
            if (taken[b]) continue;
            const Rational v = oracle.known_value(i, available[b]);
            if (v > best_value) {
                best_value = v;
                best = b;
            }
        }
        return std::pair{best, best_value};
    };

    while (active.size() > 1) {
        std::optional<Rational> best_mark;
        AgentId winner = active.front();
        for (AgentId i : active) {
            const Rational need = target - favourite(i).second;
            if (need.sign() < 0) throw ProtocolError("an available piece is worth more than 1/n");
            const Rational mark = residue.empty() ? Rational(0) : oracle.super_cut(i, residue, residue.lo(), need);
            TraceEvent e = event("mark");
            e.agent = i;
            e.point = mark;
            e.value = need;
            trace.push_back(std::move(e));
            if (!best_mark || mark < *best_mark) {
                best_mark = mark;
                winner = i;
            }
        }
        const auto [piece, piece_value] = favourite(winner);
        Piece prefix;
        if (!residue.empty()) {
            oracle.register_cut(*best_mark);
            prefix = residue.clip(residue.lo(), *best_mark);
            residue = residue.clip(*best_mark, Rational(1));
        }
        taken[piece] = true;
        out[winner] = unite(prefix, available[piece]);
        active.erase(std::find(active.begin(), active.end(), winner));

        if (oracle.known_value(winner, out[winner]) != target) {
            throw ProtocolError("winning bundle is not worth exactly 1/n to its owner");
        }
        for (AgentId i : active) {
            if (oracle.known_value(i, out[winner]) > target) {
                throw ProtocolError("departing bundle is worth more than 1/n to a remaining agent");
            }
        }
        TraceEvent e = event("winner");
        e.agent = winner;
        e.piece = piece;
        e.point = best_mark;
        e.region = out[winner];
        trace.push_back(std::move(e));
        TraceEvent r = event("residue");
        r.region = residue;
        trace.push_back(std::move(r));
    }
    const AgentId last = active.front();
    const auto [piece, piece_value] = favourite(last);
    out[last] = piece < available.size() ? unite(residue, available[piece]) : residue;
    if (oracle.known_value(last, out[last]) < target) {
        throw ProtocolError("final agent receives less than 1/n");
    }
    TraceEvent e = event("assign");
    e.agent = last;
    e.piece = piece;
    e.region = out[last];
    trace.push_back(std::move(e));
}

std::vector<PartitionView> views_with_phantoms(std::size_t n, std::size_t phantoms) {
    std::vector<PartitionView> views;
    for (AgentId i = 0; i < n; ++i) views.push_back(PartitionView::real(i));
    for (std::size_t p = 0; p < phantoms; ++p) views.push_back(PartitionView::phantom());
    return views;
}

bool slack_ok(std::size_t n, const Rational& eps_tilde, unsigned d) {
    const Rational ratio(1, static_cast<long>(n + 1));
    return pow(ratio, d) <= eps_tilde * Rational(static_cast<long>(n)) / Rational(2);
}

}  // namespace

ProtocolResult cut_and_choose(Oracle& oracle) {
    if (oracle.agents() != 2) throw std::invalid_argument("cut and choose needs exactly 2 agents");
    std::vector<TraceEvent> trace;
    const Rational y = oracle.cut(0, Rational(0), Rational(1, 2));
    TraceEvent mark = event("mark");
    mark.agent = 0;
    mark.point = y;
    trace.push_back(mark);
    const Rational left = oracle.eval(1, Interval(Rational(0), y));
    const Piece l{Interval(Rational(0), y)};
    const Piece r{Interval(y, Rational(1))};
    std::vector<Piece> pieces = left > Rational(1, 2) ? std::vector<Piece>{r, l} : std::vector<Piece>{l, r};
    TraceEvent choice = event("assign");
    choice.agent = 1;
    choice.value = left;
    choice.region = pieces[1];
    trace.push_back(choice);
    return finish(oracle, std::move(pieces), std::move(trace));
}

ProtocolResult even_paz(Oracle& oracle) {
    const std::size_t n = oracle.agents();
    if (n == 0) throw std::invalid_argument("even-paz needs at least one agent");
    std::vector<Piece> pieces(n);
    std::vector<TraceEvent> trace;
    std::vector<AgentId> everyone(n);
    std::iota(everyone.begin(), everyone.end(), 0);
    even_paz_split(oracle, Interval(Rational(0), Rational(1)), std::move(everyone), pieces, trace, true);
    return finish(oracle, std::move(pieces), std::move(trace));
}

ProtocolResult last_diminisher(Oracle& oracle) {
    const std::size_t n = oracle.agents();
    if (n == 0) throw std::invalid_argument("last diminisher needs at least one agent");
    const Rational target = share(n);
    std::vector<Piece> pieces(n);
    std::vector<TraceEvent> trace;
    std::vector<AgentId> active(n);
    std::iota(active.begin(), active.end(), 0);
    Rational lo(0);
    while (active.size() > 1) {
        AgentId holder = active.front();
        Rational x = oracle.cut(holder, lo, target);
        for (std::size_t r = 1; r < active.size(); ++r) {
            const AgentId i = active[r];
            if (oracle.eval(i, Interval(lo, x)) > target) {
                x = oracle.cut(i, lo, target);
                holder = i;
                TraceEvent e = event("mark");
                e.agent = i;
                e.point = x;
                trace.push_back(std::move(e));
            }
        }
        pieces[holder] = Piece{Interval(lo, x)};
        TraceEvent e = event("winner");
        e.agent = holder;
        e.point = x;
        trace.push_back(std::move(e));
        active.erase(std::find(active.begin(), active.end(), holder));
        lo = x;
    }
    pieces[active.front()] = Piece{Interval(lo, Rational(1))};
    return finish(oracle, std::move(pieces), std::move(trace));
}

std::size_t alg1_phantoms(std::size_t n) { return (n + 2) / 3; }

Rational alg1_eps(std::size_t n) {
    const auto z = static_cast<long>(n + alg1_phantoms(n));
    const auto nn = static_cast<long>(n);
    return min(Rational(1, nn) - Rational(1, z), Rational(1, z) - Rational(1, 2 * nn));
}

ProtocolResult algorithm1_chb_n(Oracle& oracle) {
    const std::size_t n = oracle.agents();
    if (n < 2) throw std::invalid_argument("algorithm 1 needs at least 2 agents");
    const std::size_t p = alg1_phantoms(n);
    const std::size_t z = n + p;
    std::vector<TraceEvent> trace;

    PartitionResult part = eps_perfect_partition(oracle, views_with_phantoms(n, p), z, alg1_eps(n), Piece::whole());
    std::vector<Piece> available(part.parts.begin(), part.parts.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<Interval> rest;
    for (std::size_t j = n; j < z; ++j) {
        const auto& ivs = part.parts[j].intervals();
        rest.insert(rest.end(), ivs.begin(), ivs.end());
    }
    const Piece residue(std::move(rest));
    TraceEvent e = event("partition");
    e.value = alg1_eps(n);
    e.piece = z;
    trace.push_back(std::move(e));
    TraceEvent r = event("residue");
    r.region = residue;
    trace.push_back(std::move(r));

    std::vector<Piece> out(n);
    cut_and_match(oracle, std::move(available), residue, out, trace);
    return finish(oracle, std::move(out), std::move(trace), part.cuts_introduced);
}

Alg2Params derive_params_from_slack(std::size_t n, const Rational& eps_tilde) {
    if (n < 2) throw std::invalid_argument("parameter derivation needs n >= 2");
    if (eps_tilde.sign() <= 0) throw std::invalid_argument("slack must be positive");
    const double estimate = std::log(eps_tilde.to_double() * static_cast<double>(n) / 2.0) /
                            std::log(1.0 / static_cast<double>(n + 1));
    unsigned d = estimate < 1.0 || !std::isfinite(estimate) ? 1U : static_cast<unsigned>(std::ceil(estimate));
    while (!slack_ok(n, eps_tilde, d)) ++d;
    while (d > 1 && slack_ok(n, eps_tilde, d - 1)) --d;
    const auto nn = static_cast<long>(n);
    const Rational eps_prime = eps_tilde * Rational(nn * nn) / (Rational(2) * pow(Rational(nn + 1), 3));
    return Alg2Params{eps_tilde * Rational(nn), eps_tilde, d, eps_prime};
}

Alg2Params derive_alg2_params(std::size_t n, const Rational& eps) {
    if (eps.sign() <= 0 || eps >= Rational(1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (n < 2) throw std::invalid_argument("parameter derivation needs n >= 2");
    Alg2Params params = derive_params_from_slack(n, eps / Rational(static_cast<long>(n)));
    params.eps = eps;
    return params;
}

ProtocolResult algorithm2(Oracle& oracle, const Rational& eps) {
    const std::size_t n = oracle.agents();
    const Alg2Params params = derive_alg2_params(n, eps);
    const Rational inner = share(n + 1);
    std::vector<TraceEvent> trace;
    std::vector<Piece> acc(n);
    Piece residue = Piece::whole();
    std::size_t cuts = 0;
    Rational lower(1);
    Rational upper(1);
    for (unsigned t = 1; t <= params.d; ++t) {
        PartitionResult part =
            eps_perfect_partition(oracle, views_with_phantoms(n, 1), n + 1, params.eps_prime, residue);
        cuts += part.cuts_introduced;
        lower *= inner - params.eps_prime;
        upper *= inner + params.eps_prime;
        for (AgentId i = 0; i < n; ++i) {
            for (const auto& b : part.parts) {
                const Rational v = oracle.known_value(i, b);
                if (v < lower || v > upper) {
                    throw ProtocolError("iteration " + std::to_string(t) + " piece outside its value envelope");
                }
            }
        }
        for (AgentId i = 0; i < n; ++i) acc[i] = unite(acc[i], part.parts[i]);
        residue = part.parts[n];
        TraceEvent e = event("partition");
        e.piece = t;
        e.value = params.eps_prime;
        e.region = residue;
        trace.push_back(std::move(e));
    }
    const Rational hi = share(n);
    const Rational lo = hi - params.eps_tilde;
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) {
            const Rational v = oracle.known_value(i, acc[j]);
            if (v < lo || v > hi) throw ProtocolError("accumulated piece outside [1/n - eps~, 1/n]");
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        TraceEvent check = event("accumulator");
        check.piece = j;
        check.value = params.eps_tilde;
        check.region = acc[j];
        trace.push_back(std::move(check));
    }

    std::vector<Piece> out(n);
    cut_and_match(oracle, std::move(acc), residue, out, trace);
    return finish(oracle, std::move(out), std::move(trace), cuts);
}

ProtocolFn protocol_by_name(const std::string& name, const std::optional<Rational>& eps) {
    if (name == "cut-choose") return cut_and_choose;
    if (name == "even-paz") return even_paz;
    if (name == "last-dim") return last_diminisher;
    if (name == "alg1") return algorithm1_chb_n;
    if (name == "alg2") {
        if (!eps) throw std::invalid_argument("alg2 needs --eps");
        const Rational e = *eps;
        return [e](Oracle& o) { return algorithm2(o, e); };
    }
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

}  // namespace fairdiv
