#ifndef FAIRDIV_PREDICATES_HPP
#define FAIRDIV_PREDICATES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class Notion { proportional, envy_free, super_ef, eps_perfect, chb, clb, delta_clb };
enum class Verdict { pass, fail, incomplete };

std::string_view notion_name(Notion n);
Notion parse_notion(std::string_view name);  // throws std::invalid_argument
std::string_view verdict_name(Verdict v);

// A concrete violation.
//   proportional, super_ef, envy_free, eps_perfect: lhs = V_agent(A_piece), rhs = the bound it breaks
//     (for envy_free rhs = V_agent(A_agent)).
//   chb, clb, delta_clb: lhs = sum of V_agent(A_j) over j outside coalition, rhs = bound; lhs > rhs.
struct Witness {
    AgentId agent = 0;
    std::optional<AgentId> piece;
    std::vector<AgentId> coalition;  // sorted, contains agent
    Rational lhs;
    Rational rhs;
};

struct FairnessReport {
    Notion notion;
    Verdict verdict = Verdict::pass;
    std::optional<Witness> witness;  // present iff verdict == fail

    bool pass() const { return verdict == Verdict::pass; }
};

// Matrix forms take values[i][j] = V_i(A_j). Completeness is supplied by the
// caller because it cannot be recovered from the matrix alone.
FairnessReport is_proportional(const ValueMatrix& m);
FairnessReport is_envy_free(const ValueMatrix& m);
FairnessReport is_super_ef(const ValueMatrix& m);
FairnessReport is_eps_perfect(const ValueMatrix& m, const Rational& eps);
FairnessReport check_chb(const ValueMatrix& m, bool complete, std::size_t k);
FairnessReport check_clb(const ValueMatrix& m, bool complete, std::size_t k);
// Proportionality plus the (1 + delta)-relaxed bound for 2 <= |S| <= k.
FairnessReport check_delta_clb(const ValueMatrix& m, bool complete, std::size_t k, const Rational& delta);

FairnessReport is_proportional(const Allocation& a, const Instance& inst);
FairnessReport is_envy_free(const Allocation& a, const Instance& inst);
FairnessReport is_super_ef(const Allocation& a, const Instance& inst);
FairnessReport is_eps_perfect(const Allocation& a, const Instance& inst, const Rational& eps);
FairnessReport check_chb(const Allocation& a, const Instance& inst, std::size_t k);
FairnessReport check_clb(const Allocation& a, const Instance& inst, std::size_t k);
FairnessReport check_delta_clb(const Allocation& a, const Instance& inst, std::size_t k,
                               const Rational& delta);

// Bound on the value of the complement of a coalition of size s among n agents.
// `family` must be chb, clb or delta_clb.
Rational subset_bound(Notion family, std::size_t n, std::size_t s, const Rational& delta = Rational(0));

// Enumerates every coalition with |S| <= k (ordered by size, then by bitmask)
// and every member. Only for n <= 12.
FairnessReport brute_force_subset_check(const ValueMatrix& m, bool complete, std::size_t k, Notion family,
                                        const Rational& delta = Rational(0));
FairnessReport brute_force_subset_check(const Allocation& a, const Instance& inst, std::size_t k,
                                        Notion family, const Rational& delta = Rational(0));

inline constexpr std::size_t kBruteForceLimit = 12;

// True iff the witness describes a genuine violation of `notion` under m.
bool witness_holds(Notion notion, const Witness& w, const ValueMatrix& m, const Rational& param = Rational(0));

}  // namespace fairdiv

#endif  // FAIRDIV_PREDICATES_HPP
