#ifndef FAIRDIV_PROTOCOLS_HPP
#define FAIRDIV_PROTOCOLS_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/eps_perfect.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// A protocol reached a state its correctness argument rules out.
class ProtocolError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct TraceEvent {
    std::string kind;  // partition, residue, mark, winner, assign
    std::optional<AgentId> agent;
    std::optional<std::size_t> piece;
    std::optional<Rational> point;
    std::optional<Rational> value;
    std::optional<Piece> region;
};

struct ProtocolResult {
    Allocation allocation;
    QueryLedger ledger;
    std::vector<TraceEvent> trace;
    std::size_t subroutine_cuts = 0;  // boundaries introduced by eps-perfect partitions
};

struct Alg2Params {
    Rational eps;
    Rational eps_tilde;
    unsigned d = 0;
    Rational eps_prime;
};

// All protocols read valuations only through the oracle they are handed.
ProtocolResult cut_and_choose(Oracle& oracle);
ProtocolResult even_paz(Oracle& oracle);
ProtocolResult last_diminisher(Oracle& oracle);
ProtocolResult algorithm1_chb_n(Oracle& oracle);
ProtocolResult algorithm2(Oracle& oracle, const Rational& eps);

// Phantom count and partition tolerance used by algorithm1_chb_n for n agents.
std::size_t alg1_phantoms(std::size_t n);
Rational alg1_eps(std::size_t n);

// eps_tilde = eps/n, then the d and eps' of the slack form. Requires 0 < eps < 1, n >= 2.
Alg2Params derive_alg2_params(std::size_t n, const Rational& eps);
// d = least d >= 1 with (1/(n+1))^d <= eps_tilde*n/2, eps' = eps_tilde*n^2 / (2(n+1)^3).
// The float estimate of d is corrected in exact arithmetic in both directions.
Alg2Params derive_params_from_slack(std::size_t n, const Rational& eps_tilde);

// Protocol by name: cut-choose, even-paz, last-dim, alg1, alg2 (eps required for alg2).
using ProtocolFn = std::function<ProtocolResult(Oracle&)>;
ProtocolFn protocol_by_name(const std::string& name, const std::optional<Rational>& eps = std::nullopt);

}  // namespace fairdiv

#endif  // FAIRDIV_PROTOCOLS_HPP
