#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oplab/genint.hpp"
#include "oplab/linalg.hpp"
#include "oplab/weights.hpp"

namespace oplab {

enum class VerdictKind { Equivalent, NotEquivalent, Inconclusive };

// Outcome of a relation query. Equivalent verdicts carry a replayable
// witness (K, exceptional set); refutations carry a monotone list of
// (depth, forced mass) pairs; Inconclusive records the depth reached.
struct EquivVerdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::uint64_t K = 0;
    std::vector<std::uint64_t> witness_set;
    std::string witness_note;  // closed-form description of the tail part
    std::vector<std::pair<std::uint64_t, double>> certificate;
    std::uint64_t depth = 0;
};

// K a_i >= b_i off a square-summable exceptional set. Decides the infinite
// claim only through tail closed forms; otherwise Inconclusive.
EquivVerdict dominates(const WeightSequence& alpha, const WeightSequence& beta,
                       std::uint64_t depth, std::uint64_t k_max);

// both directions of dominates; witness merges the exceptional sets
EquivVerdict seq_equivalent(const WeightSequence& alpha, const WeightSequence& beta,
                            std::uint64_t depth, std::uint64_t k_max);

// sup{l >= 1 : 2^{1-l} >= s_k}; infinity iff s_k = 0
GenInt n_map(const SingularSpectrum& spectrum, std::size_t k);

struct YAngle {
    std::uint64_t index;
    double sin_phi;
    double cos_phi;
};

// Frame g_i = sin(phi_i) e_i + cos(phi_i) f_i realizing a prescribed
// generalized-integer sequence; sin(phi_i) = min(1, 1.5 * 2^{-beta_i} / s_i)
// keeps the n_map round trip exact at the truncation.
std::vector<YAngle> y_map(const GenIntSeq& beta, const SingularSpectrum& base_spectrum,
                          std::uint64_t depth);

// membership in F(K, n) with the minimal witness set; the mass comparison is
// exact integer arithmetic
bool star_equiv_at(const GenIntSeq& beta, const GenIntSeq& gamma, std::uint64_t K,
                   std::uint64_t n);

// forced indices and their exact mass at level n (the minimal witness)
struct StarWitness {
    std::vector<std::uint64_t> forced;
    DyadicSum mass;
};
StarWitness star_witness(const GenIntSeq& beta, const GenIntSeq& gamma, std::uint64_t K,
                         std::uint64_t n);

EquivVerdict star_equiv(const GenIntSeq& beta, const GenIntSeq& gamma,
                        std::uint64_t depth, std::uint64_t k_max);

// image of a grid point under the block reduction map, materializable to depth
GenIntSeq borel2_phi(const XiPoint& b, GenIntSeqPtr alpha, std::uint64_t depth,
                     std::uint64_t k_max = 8);

// separating family: 0 on classes with bit 0, i-1 on classes with bit 1,
// classes taken mod bits.size()
XiPoint b_epsilon(const std::vector<bool>& bits);

// sup_{i <= depth} |b_i - c_i|
std::uint64_t eks_discrepancy(const XiPoint& b, const XiPoint& c, std::uint64_t depth);

}  // namespace oplab
