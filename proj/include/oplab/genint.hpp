#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "oplab/dyadic.hpp"
#include "oplab/errors.hpp"

namespace oplab {

// Natural number extended with infinity. 4^{-inf} = 0 exactly.
struct GenInt {
    std::uint64_t v = 0;
    bool inf = false;

    static GenInt infinity() { return {0, true}; }
    static GenInt of(std::uint64_t x) { return {x, false}; }

    bool operator==(const GenInt& o) const {
        return inf == o.inf && (inf || v == o.v);
    }
    bool operator<(const GenInt& o) const {
        if (inf) return false;
        if (o.inf) return true;
        return v < o.v;
    }
    bool operator<=(const GenInt& o) const { return *this < o || *this == o; }
};

// |a - b|; infinity unless both are infinite (then 0).
GenInt genint_diff(GenInt a, GenInt b);

// Possibly infinite value that may exceed the machine-word range.
struct GenBig {
    BigInt v = 0;
    bool inf = false;
};

class GenIntSeq;
using GenIntSeqPtr = std::shared_ptr<const GenIntSeq>;

class Borel2Blocks;
using Borel2BlocksPtr = std::shared_ptr<const Borel2Blocks>;

class XiPoint;

// Tail rules for nondecreasing generalized-integer sequences.
enum class GenTailKind {
    Const,     // fixed value from the tail start
    Arith,     // v0 + step * (i - start), step >= 0
    Log4,      // 1 + ceil(log4 i)
    PhiImage,  // image of a grid point under the block reduction map
};

struct GenTail {
    GenTailKind kind = GenTailKind::Const;
    GenInt value = GenInt::infinity();      // Const
    std::uint64_t v0 = 0, step = 0;         // Arith
    Borel2BlocksPtr blocks;                 // PhiImage
    std::shared_ptr<const XiPoint> point;   // PhiImage
};

// Nondecreasing sequence over N u {inf}, entry-wise >= an optional base.
class GenIntSeq {
  public:
    GenIntSeq() = default;
    GenIntSeq(std::vector<GenInt> prefix, GenTail tail, GenIntSeqPtr base = nullptr);

    GenInt at(std::uint64_t i) const;  // 1-based
    GenBig at_big(const BigInt& i) const;
    std::vector<GenInt> materialize(std::uint64_t depth) const;

    const std::vector<GenInt>& prefix() const { return prefix_; }
    const GenTail& tail() const { return tail_; }
    const GenIntSeqPtr& base() const { return base_; }

    // true when sum 4^{-alpha_i} provably diverges under the tail rule
    bool pow4_sum_diverges() const;

    // last index of the constant run containing i, nullopt when the run is
    // unbounded; used by the block scan (throws for PhiImage tails)
    std::optional<BigInt> run_end(const BigInt& i) const;

  private:
    std::vector<GenInt> prefix_;
    GenTail tail_;
    GenIntSeqPtr base_;
};

// Tail rules for points of the product grid (entry i ranges over 0..i-1).
enum class XiTailKind {
    Zero,      // 0 forever
    Cap,       // i - 1
    BEpsilon,  // 0 on classes with bit 0, i - 1 on classes with bit 1;
               // class of i is 1 + (i-1) mod m
};

struct XiTail {
    XiTailKind kind = XiTailKind::Zero;
    std::vector<bool> bits;  // BEpsilon, indexed by class 1..m
    std::uint64_t m = 1;     // BEpsilon modulus
};

class XiPoint {
  public:
    XiPoint() = default;
    XiPoint(std::vector<std::uint64_t> prefix, XiTail tail = {});

    std::uint64_t at(std::uint64_t i) const;  // 1-based, value in [0, i-1]
    std::vector<std::uint64_t> materialize(std::uint64_t depth) const;

    const std::vector<std::uint64_t>& prefix() const { return prefix_; }
    const XiTail& tail() const { return tail_; }

  private:
    std::vector<std::uint64_t> prefix_;
    XiTail tail_;
};

// sup_i |b_i - c_i| over all coordinates, decided by the tail closed forms;
// nullopt means the sup is infinite
std::optional<std::uint64_t> xi_sup_diff(const XiPoint& b, const XiPoint& c);

// Block decomposition for the reduction map: cutpoints p_k < q_k with
// sum_{i in [p_k, q_k)} 4^{-alpha_i} > 4^{2k} and alpha_{p_{k+1}} > k + q_k.
class Borel2Blocks {
  public:
    struct Block {
        BigInt p, q;              // half-open [p, q)
        GenBig next_alpha;        // alpha_{p_{k+1}}, inf flag doubles as "unknown"
        bool next_alpha_known = false;
        BigInt p_next;            // valid when next_alpha_known
    };

    // Scans alpha until k_max blocks are built or the next cutpoint leaves
    // the representable horizon. alpha must carry a divergence certificate.
    Borel2Blocks(GenIntSeqPtr alpha, std::uint64_t k_max);

    const std::vector<Block>& blocks() const { return blocks_; }
    const GenIntSeqPtr& alpha() const { return alpha_; }
    bool hit_horizon() const { return hit_horizon_; }

    // phi(b)_j for a materialized index, using the grid point's block values
    GenInt phi_value(std::uint64_t j, const XiPoint& b) const;

  private:
    GenIntSeqPtr alpha_;
    std::vector<Block> blocks_;
    bool hit_horizon_ = false;
};

}  // namespace oplab
