#pragma once

#include <cstdint>
#include <vector>

#include "oplab/linalg.hpp"
#include "oplab/weights.hpp"

namespace oplab {

// Element of M_n over a weighted-basis space: coefficient matrices a_i on the
// weighted basis vectors (e) and b_i on the unweighted ones (f).
struct MatElement {
    int n = 1;
    std::vector<std::pair<std::uint64_t, ComplexMatrix>> e_coeffs;
    std::vector<std::pair<std::uint64_t, ComplexMatrix>> f_coeffs;

    void validate() const;
    std::uint64_t max_index() const;
};

struct SpacePartition {
    std::vector<std::vector<std::uint64_t>> blocks;  // disjoint, covering 1..N
};

// Matricial norm of x in the weighted space at the given weights:
// sqrt(max{ || sum a a* + sum b b* ||, || sum w_i^2 a* a || }).
double xd_norm(const WeightSequence& alpha, const MatElement& x);

// Independent route through concrete row/column block operators.
double concrete_rep_norm(const WeightSequence& alpha, const MatElement& x);

struct SplitBounds {
    double lower;  // max over blocks of the restricted norm
    double upper;  // sqrt(m) * lower
    double whole;  // norm of the unsplit element
};

SplitBounds split_bounds(const WeightSequence& alpha, const MatElement& x,
                         const SpacePartition& part);

// Max observed ratio xd_norm(alpha, x) / xd_norm(lambda*alpha, x) over sampled
// elements; lies in [1, 1/lambda].
double scale_check(const WeightSequence& alpha, double lambda, int samples,
                   std::uint64_t seed);

// Seeded random element: complex standard Gaussian entries, coefficient count
// and matrix size bounded by the arguments.
MatElement random_element(int max_n, int max_coeffs, std::uint64_t max_index,
                          std::uint64_t seed, bool with_f = true);

}  // namespace oplab
