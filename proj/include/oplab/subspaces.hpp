#pragma once

#include <cstdint>
#include <vector>

#include "oplab/cbnorm.hpp"
#include "oplab/linalg.hpp"
#include "oplab/weights.hpp"

namespace oplab {

// Subspace of the depth-N truncation. Coordinates 1..N are the weighted
// basis directions, N+1..2N the unweighted ones. Raw spans are accepted and
// re-orthonormalized on ingestion.
struct SubspaceFrame {
    WeightSequence ambient;
    std::uint64_t depth = 0;
    ComplexMatrix basis;  // 2N x d, orthonormal columns

    SubspaceFrame(WeightSequence amb, std::uint64_t N, const ComplexMatrix& raw);

    ComplexMatrix ambient_op() const;  // diag(alpha) ++ 0, 2N x 2N
    std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
};

// singular values of the ambient operator restricted to the frame; checked
// against the ambient spectrum (interlacing)
SingularSpectrum restricted_spectrum(const SubspaceFrame& Y);

struct WielandtResult {
    double closed_form;  // sum of the selected squared singular values
    double best_oracle;  // best sampled chain value (max over chains of the
                         // minimized tuple sum)
};

WielandtResult wielandt_check(const SubspaceFrame& Y,
                              const std::vector<std::size_t>& indices, int trials,
                              std::uint64_t seed);

struct CanonicalBasis {
    WeightSequence beta;  // ||A e_i'|| per frame column
    ComplexMatrix T;      // change of basis onto the diagonal model
    double averaging_residual;  // sign-average identity residual
    bool exact_average;         // false when the analytic diagonal path was used
};

CanonicalBasis canonical_basis(const SubspaceFrame& Y);

// Interleaved weight schedule: even position 2i carries a^{-k} for
// N_k <= i < N_{k+1}, odd positions carry 0.
struct SubbasisSchedule {
    double a = 1.5;
    double growth = 0.0;  // cutpoint growth base, 0 = default

    WeightSequence weights() const;
    std::uint64_t cutpoint(std::uint64_t k) const;   // N_k
    double level_weight(std::uint64_t k) const;      // a^{-k}
};

struct SubbasisEmbedding {
    std::vector<std::uint64_t> pi;  // 1-based target index per frame column
    double distortion;              // product of the two identity cb norms
};

SubbasisEmbedding subbasis_embed(const SubbasisSchedule& schedule,
                                 const SubspaceFrame& Y);

struct NoncomplementedBound {
    double bound;  // (sum_{i=K+1}^{K+N} (a_i b_i)^2)^{1/2} / 2
    bool divergence_certified;
};

NoncomplementedBound noncomplemented_bound(const WeightSequence& alpha,
                                           const WeightSequence& beta,
                                           std::uint64_t K, std::uint64_t N);

enum class SubsequenceCase { Inside, Outside };

// Certified distortion lower bound for relabeling the slow-decay weights by
// the fast-decay ones: 2^{n/2} (inside) or 2^{(n+1)/2} (outside).
double subsequence_distortion(std::uint64_t n, SubsequenceCase kind);

}  // namespace oplab
