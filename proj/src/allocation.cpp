#include "fairdiv/allocation.hpp"

#include <stdexcept>

namespace fairdiv {

Piece bundle(const Allocation& a, const std::vector<AgentId>& agents) {
    std::vector<Interval> all;
    for (AgentId i : agents) {
        if (i >= a.n()) {
            throw std::out_of_range("agent " + std::to_string(i) + " not in allocation of " +
                                    std::to_string(a.n()));
        }
        const auto& ivs = a.pieces[i].intervals();
        all.insert(all.end(), ivs.begin(), ivs.end());
    }
    return Piece(std::move(all));
}

bool is_complete(const Allocation& a) {
    std::vector<AgentId> everyone(a.n());
    for (AgentId i = 0; i < a.n(); ++i) everyone[i] = i;
    return bundle(a, everyone) == Piece::whole();
}

ValidationReport validate(const Allocation& a, bool require_complete) {
    ValidationReport report;
    for (AgentId i = 0; i < a.n(); ++i) {
        for (AgentId j = i + 1; j < a.n(); ++j) {
            const Piece shared = intersect(a.pieces[i], a.pieces[j]);
            if (!shared.empty()) {
                report.status = ValidationReport::Status::overlap;
                report.first = i;
                report.second = j;
                report.witness = shared.intervals().front();
                report.message = "pieces of agents " + std::to_string(i) + " and " +
                                 std::to_string(j) + " overlap on [" + report.witness->lo.str() +
                                 "," + report.witness->hi.str() + ")";
                return report;
            }
        }
    }
    if (require_complete) {
        std::vector<AgentId> everyone(a.n());
        for (AgentId i = 0; i < a.n(); ++i) everyone[i] = i;
        const Piece uncovered = complement(bundle(a, everyone));
        if (!uncovered.empty()) {
            report.status = ValidationReport::Status::incomplete;
            report.witness = uncovered.intervals().front();
            report.message = "cake not covered on [" + report.witness->lo.str() + "," +
                             report.witness->hi.str() + ")";
        }
    }
    return report;
}

ValueMatrix value_matrix(const Instance& inst, const Allocation& a) {
    if (inst.n() != a.n()) {
        throw std::invalid_argument("instance has " + std::to_string(inst.n()) +
                                    " agents but allocation has " + std::to_string(a.n()));
    }
    ValueMatrix m(inst.n(), std::vector<Rational>(a.n()));
    for (AgentId i = 0; i < inst.n(); ++i) {
        for (AgentId j = 0; j < a.n(); ++j) m[i][j] = inst[i].eval_piece(a.pieces[j]);
    }
    return m;
}

}  // namespace fairdiv
