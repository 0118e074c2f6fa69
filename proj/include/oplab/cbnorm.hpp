#pragma once

#include <cstdint>
#include <string>

#include "oplab/linalg.hpp"
#include "oplab/weights.hpp"

namespace oplab {

struct CbNormResult {
    double value = 0.0;
    ComplexMatrix witness;  // maximizing u, possibly empty
    std::string method;     // exact-greedy | optimizer | amplification-lower-bound
    bool certified = false;
    double upper_bound = 0.0;  // dual bound; equals value on certified paths
};

// Formal identity between the diagonal spaces at the two weight sequences.
// Exact fractional-knapsack solution over diagonal witnesses:
// value^2 = max{1, max sum b_i^2 s_i s.t. sum a_i^2 s_i <= 1, 0 <= s_i <= 1}.
CbNormResult cb_norm_diag_identity(const WeightSequence& alpha,
                                   const WeightSequence& beta, std::uint64_t depth);

// General map T between the spaces attached to contractions A and B:
// value = max{ ||T||, sup{ tr(T*B*BT v)^{1/2} : v >= 0, ||v|| <= 1,
// tr(A*A v) <= 1 } }. The reported value is a feasible-point lower bound;
// upper_bound is the matching dual bound.
CbNormResult cb_norm_general(const ComplexMatrix& A, const ComplexMatrix& B,
                             const ComplexMatrix& T, std::uint64_t seed = 0);

// Certified ratio bound from the closed-form norms sqrt(max{1, |I| w^2}) of
// the column-patterned test element; exact on counts up to 2^50.
double amplified_lower_bound(std::uint64_t index_count, double w_src, double w_dst);

struct SameBasisCheck {
    double C;           // max of the two one-sided cb bounds for U
    double id_product;  // ||id||cb * ||id^{-1}||cb between the diagonal spaces
    bool bound_holds;   // id_product <= 16 C^4 + 1e-6
};

SameBasisCheck same_basis_check(const WeightSequence& alpha, const WeightSequence& beta,
                                const ComplexMatrix& U, std::uint64_t depth);

}  // namespace oplab
