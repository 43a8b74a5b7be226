#include "fairdiv/predicates.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fairdiv {

namespace {

void require_square(const ValueMatrix& m) {
    for (const auto& row : m) {
        if (row.size() != m.size()) throw std::invalid_argument("value matrix must be square");
    }
}

void require_k(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) {
        throw std::out_of_range("coalition size bound k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(n) + "]");
    }
}

void require_family(Notion family) {
    if (family != Notion::chb && family != Notion::clb && family != Notion::delta_clb) {
        throw std::invalid_argument("not a coalition notion: " + std::string(notion_name(family)));
    }
}

FairnessReport failed(Notion notion, Witness w) {
    return FairnessReport{notion, Verdict::fail, std::move(w)};
}

Rational outside_sum(const std::vector<Rational>& row, const std::vector<AgentId>& coalition) {
    Rational total;
    for (AgentId j = 0; j < row.size(); ++j) {
        if (!std::binary_search(coalition.begin(), coalition.end(), j)) total += row[j];
    }
    return total;
}

// For agent i and size s the complement is largest when S packs in the s-1
// other bundles that i values least.
FairnessReport fast_subset_check(const ValueMatrix& m, bool complete, std::size_t k, Notion family,
                                 const Rational& delta) {
    require_square(m);
    const std::size_t n = m.size();
    require_k(n, k);
    if (!complete) return FairnessReport{family, Verdict::incomplete, std::nullopt};

    std::vector<std::vector<AgentId>> order(n);
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) {
            if (j != i) order[i].push_back(j);
        }
        std::stable_sort(order[i].begin(), order[i].end(),
                         [&](AgentId a, AgentId b) { return m[i][a] < m[i][b]; });
    }
    for (std::size_t s = 1; s <= k; ++s) {
        const Rational bound = subset_bound(family, n, s, delta);
        for (AgentId i = 0; i < n; ++i) {
            std::vector<AgentId> coalition(order[i].begin(), order[i].begin() + static_cast<std::ptrdiff_t>(s - 1));
            coalition.push_back(i);
            std::sort(coalition.begin(), coalition.end());
            Rational lhs = outside_sum(m[i], coalition);
            if (lhs > bound) return failed(family, Witness{i, std::nullopt, std::move(coalition), lhs, bound});
        }
    }
    return FairnessReport{family, Verdict::pass, std::nullopt};
}

struct Checked {
    ValueMatrix m;
    bool complete;
};

Checked prepare(const Allocation& a, const Instance& inst) {
    const ValidationReport v = validate(a, false);
    if (v.status == ValidationReport::Status::overlap) throw std::invalid_argument(v.message);
    return Checked{value_matrix(inst, a), is_complete(a)};
}

}  // namespace

std::string_view notion_name(Notion n) {
    switch (n) {
        case Notion::proportional: return "proportional";
        case Notion::envy_free: return "envy-free";
        case Notion::super_ef: return "super-ef";
        case Notion::eps_perfect: return "eps-perfect";
        case Notion::chb: return "chb";
        case Notion::clb: return "clb";
        case Notion::delta_clb: return "delta-clb";
    }
    return "unknown";
}

Notion parse_notion(std::string_view name) {
    for (Notion n : {Notion::proportional, Notion::envy_free, Notion::super_ef, Notion::eps_perfect,
                     Notion::chb, Notion::clb, Notion::delta_clb}) {
        if (notion_name(n) == name) return n;
    }
    if (name == "prop") return Notion::proportional;
    if (name == "ef") return Notion::envy_free;
    throw std::invalid_argument("unknown notion '" + std::string(name) + "'");
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::incomplete: return "incomplete";
    }
    return "unknown";
}

Rational subset_bound(Notion family, std::size_t n, std::size_t s, const Rational& delta) {
    require_family(family);
    const auto rest = static_cast<long>(n - s);
    switch (family) {
        case Notion::chb: return Rational(rest, rest + 1);
        case Notion::clb: return Rational(rest, static_cast<long>(n));
        default:
            if (s == 1) return Rational(rest, static_cast<long>(n));
            return Rational(rest, static_cast<long>(n)) * (Rational(1) + delta);
    }
}

FairnessReport is_proportional(const ValueMatrix& m) {
    require_square(m);
    const std::size_t n = m.size();
    for (AgentId i = 0; i < n; ++i) {
        const Rational share(1, static_cast<long>(n));
        if (m[i][i] < share) return failed(Notion::proportional, Witness{i, i, {i}, m[i][i], share});
    }
    return FairnessReport{Notion::proportional, Verdict::pass, std::nullopt};
}

FairnessReport is_envy_free(const ValueMatrix& m) {
    require_square(m);
    for (AgentId i = 0; i < m.size(); ++i) {
        for (AgentId j = 0; j < m.size(); ++j) {
            if (m[i][j] > m[i][i]) return failed(Notion::envy_free, Witness{i, j, {}, m[i][j], m[i][i]});
        }
    }
    return FairnessReport{Notion::envy_free, Verdict::pass, std::nullopt};
}

FairnessReport is_super_ef(const ValueMatrix& m) {
    require_square(m);
    const std::size_t n = m.size();
    const Rational share(1, static_cast<long>(std::max<std::size_t>(n, 1)));
    for (AgentId i = 0; i < n; ++i) {
        if (m[i][i] < share) return failed(Notion::super_ef, Witness{i, i, {}, m[i][i], share});
        for (AgentId j = 0; j < n; ++j) {
            if (j != i && m[i][j] > share) return failed(Notion::super_ef, Witness{i, j, {}, m[i][j], share});
        }
    }
    return FairnessReport{Notion::super_ef, Verdict::pass, std::nullopt};
}

FairnessReport is_eps_perfect(const ValueMatrix& m, const Rational& eps) {
    require_square(m);
    if (eps.sign() < 0) throw std::invalid_argument("epsilon must be non-negative");
    const std::size_t n = m.size();
    const Rational share(1, static_cast<long>(std::max<std::size_t>(n, 1)));
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = 0; j < n; ++j) {
            if (m[i][j] < share - eps) return failed(Notion::eps_perfect, Witness{i, j, {}, m[i][j], share - eps});
            if (m[i][j] > share + eps) return failed(Notion::eps_perfect, Witness{i, j, {}, m[i][j], share + eps});
        }
    }
    return FairnessReport{Notion::eps_perfect, Verdict::pass, std::nullopt};
}

FairnessReport check_chb(const ValueMatrix& m, bool complete, std::size_t k) {
    return fast_subset_check(m, complete, k, Notion::chb, Rational(0));
}

FairnessReport check_clb(const ValueMatrix& m, bool complete, std::size_t k) {
    return fast_subset_check(m, complete, k, Notion::clb, Rational(0));
}

FairnessReport check_delta_clb(const ValueMatrix& m, bool complete, std::size_t k, const Rational& delta) {
    if (delta.sign() < 0) throw std::invalid_argument("delta must be non-negative");
    return fast_subset_check(m, complete, k, Notion::delta_clb, delta);
}

FairnessReport brute_force_subset_check(const ValueMatrix& m, bool complete, std::size_t k, Notion family,
                                        const Rational& delta) {
    require_family(family);
    require_square(m);
    const std::size_t n = m.size();
    if (n > kBruteForceLimit) {
        throw std::invalid_argument("brute force limited to n <= " + std::to_string(kBruteForceLimit));
    }
    require_k(n, k);
    if (!complete) return FairnessReport{family, Verdict::incomplete, std::nullopt};
    const unsigned full = 1U << n;
    for (std::size_t s = 1; s <= k; ++s) {
        const Rational bound = subset_bound(family, n, s, delta);
        for (unsigned mask = 1; mask < full; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != s) continue;
            for (AgentId i = 0; i < n; ++i) {
                if ((mask >> i & 1U) == 0) continue;
                Rational lhs;
                for (AgentId j = 0; j < n; ++j) {
                    if ((mask >> j & 1U) == 0) lhs += m[i][j];
                }
                if (lhs > bound) {
                    std::vector<AgentId> coalition;
                    for (AgentId j = 0; j < n; ++j) {
                        if (mask >> j & 1U) coalition.push_back(j);
                    }
                    return failed(family, Witness{i, std::nullopt, std::move(coalition), lhs, bound});
                }
            }
        }
    }
    return FairnessReport{family, Verdict::pass, std::nullopt};
}

FairnessReport is_proportional(const Allocation& a, const Instance& inst) {
    return is_proportional(prepare(a, inst).m);
}

FairnessReport is_envy_free(const Allocation& a, const Instance& inst) {
    return is_envy_free(prepare(a, inst).m);
}

FairnessReport is_super_ef(const Allocation& a, const Instance& inst) {
    return is_super_ef(prepare(a, inst).m);
}

FairnessReport is_eps_perfect(const Allocation& a, const Instance& inst, const Rational& eps) {
    return is_eps_perfect(prepare(a, inst).m, eps);
}

FairnessReport check_chb(const Allocation& a, const Instance& inst, std::size_t k) {
    const Checked c = prepare(a, inst);
    return check_chb(c.m, c.complete, k);
}

FairnessReport check_clb(const Allocation& a, const Instance& inst, std::size_t k) {
    const Checked c = prepare(a, inst);
    return check_clb(c.m, c.complete, k);
}

FairnessReport check_delta_clb(const Allocation& a, const Instance& inst, std::size_t k, const Rational& delta) {
    const Checked c = prepare(a, inst);
    return check_delta_clb(c.m, c.complete, k, delta);
}

FairnessReport brute_force_subset_check(const Allocation& a, const Instance& inst, std::size_t k, Notion family,
                                        const Rational& delta) {
    const Checked c = prepare(a, inst);
    return brute_force_subset_check(c.m, c.complete, k, family, delta);
}

bool witness_holds(Notion notion, const Witness& w, const ValueMatrix& m, const Rational& param) {
    const std::size_t n = m.size();
    if (w.agent >= n) return false;
    const auto& row = m[w.agent];
    const Rational share(1, static_cast<long>(std::max<std::size_t>(n, 1)));
    switch (notion) {
        case Notion::proportional:
            return w.lhs == row[w.agent] && w.rhs == share && w.lhs < w.rhs;
        case Notion::envy_free:
            return w.piece && *w.piece < n && w.lhs == row[*w.piece] && w.rhs == row[w.agent] && w.lhs > w.rhs;
        case Notion::super_ef:
            if (!w.piece || *w.piece >= n || w.lhs != row[*w.piece] || w.rhs != share) return false;
            return *w.piece == w.agent ? w.lhs < w.rhs : w.lhs > w.rhs;
        case Notion::eps_perfect:
            if (!w.piece || *w.piece >= n || w.lhs != row[*w.piece]) return false;
            return (w.rhs == share - param && w.lhs < w.rhs) || (w.rhs == share + param && w.lhs > w.rhs);
        case Notion::chb:
        case Notion::clb:
        case Notion::delta_clb: {
            const auto& s = w.coalition;
            if (s.empty() || !std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end() || s.back() >= n ||
                !std::binary_search(s.begin(), s.end(), w.agent)) {
                return false;
            }
            return w.lhs == outside_sum(row, s) && w.rhs == subset_bound(notion, n, s.size(), param) &&
                   w.lhs > w.rhs;
        }
    }
    return false;
}

}  // namespace fairdiv
