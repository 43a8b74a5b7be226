#ifndef FAIRDIV_HIERARCHY_HPP
#define FAIRDIV_HIERARCHY_HPP

#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"

namespace fairdiv {

struct Realized {
    Instance instance;
    Allocation allocation;
    ValueMatrix matrix;
};

// Piece j is [j/n, (j+1)/n); agent i has density n*M[i][j] on it, so V_i(A_j) = M[i][j].
// Throws std::invalid_argument unless M is square, non-negative, with unit row sums.
Realized realize_value_matrix(const ValueMatrix& m);

// Separating examples between fairness notions on complete allocations.
// Index choices: j_i = i+1, l_i = i+2, Z_i = {i+1, ..., i+k} (all mod n).

// own 1/(n-k+1), the rest on j_i. CHB-k but not CHB-(k+1) when k <= n-2. Needs 1 <= k <= n-1.
ValueMatrix chb_strict_matrix(std::size_t n, std::size_t k);
// own 1/3, j_i 1/2, l_i 1/6. CHB-n but not envy-free. Needs n >= 3.
ValueMatrix chb_not_ef_matrix(std::size_t n);
// own k/n, zero on Z_i, (1 + 1/(n-k-1))/n elsewhere. CLB-k but not CLB-(k+1). Needs 1 <= k < n-1.
ValueMatrix clb_strict_matrix(std::size_t n, std::size_t k);
// own c/n with c = ceil(n/2)-1, the rest on j_i. CLB-c but not envy-free. Needs n >= 3.
ValueMatrix clb_not_ef_matrix(std::size_t n);
// zero on j_i, 1/(n-1) elsewhere. Envy-free but not CLB-2. Needs n >= 3.
ValueMatrix ef_not_clb2_matrix(std::size_t n);

Realized counterexample_chb_strict(std::size_t n, std::size_t k);
Realized counterexample_chb_not_ef(std::size_t n);
Realized counterexample_clb_strict(std::size_t n, std::size_t k);
Realized counterexample_clb_not_ef(std::size_t n);
Realized counterexample_ef_not_clb2(std::size_t n);

// Names accepted by hierarchy_case: chb-strict, chb-not-ef, clb-strict, clb-not-ef, ef-not-clb2.
const std::vector<std::string>& hierarchy_cases();
Realized hierarchy_case(const std::string& name, std::size_t n, std::size_t k);

}  // namespace fairdiv

#endif  // FAIRDIV_HIERARCHY_HPP
