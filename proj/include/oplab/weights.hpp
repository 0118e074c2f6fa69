#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "oplab/errors.hpp"

namespace oplab {

// Closed-form tail rules for weight sequences. Entries are indexed from 1;
// the explicit prefix overrides the rule on its range.
enum class TailKind {
    Zero,         // 0 forever
    Blocks,       // finite run of (count, value) blocks, then 0
    NotSubbasis,  // 2^{-n^2} (role alpha) or 2^{-n^2-n} (role beta) on
                  // index blocks [4^{n^2}, 4^{(n+1)^2}), n = 0, 1, ...
    Subbasis,     // interleaved schedule: even positions 2j carry a^{-k} for
                  // N_k <= j < N_{k+1}, odd positions carry 0
    Power,        // min(1, c * i^{-p})
};

struct TailBlock {
    std::uint64_t count;
    double value;
};

struct Tail {
    TailKind kind = TailKind::Zero;
    std::vector<TailBlock> blocks;       // Blocks
    bool beta_role = false;              // NotSubbasis: false = alpha, true = beta
    double a = 1.5;                      // Subbasis
    double growth = 0.0;                 // Subbasis cutpoint growth base (0 = default)
    double coeff = 1.0, power = 0.5;     // Power
};

class WeightSequence {
  public:
    WeightSequence() = default;
    WeightSequence(std::vector<double> prefix, Tail tail = {}, bool sorted = false);

    // copyable despite the memoization mutex
    WeightSequence(const WeightSequence& o);
    WeightSequence& operator=(const WeightSequence& o);

    static WeightSequence from_prefix(std::vector<double> prefix);

    double at(std::uint64_t i) const;  // 1-based
    std::vector<double> materialize(std::uint64_t depth) const;

    const std::vector<double>& prefix() const { return prefix_; }
    const Tail& tail() const { return tail_; }
    bool sorted_flag() const { return sorted_; }

    // Closed-form divergence certificate for sum alpha_i^2 (the non-HS flag).
    // nullopt when the rule gives no decision.
    std::optional<bool> hs_sum_diverges() const;

    // Subbasis schedule accessors (throws unless tail kind is Subbasis).
    std::uint64_t subbasis_cutpoint(std::uint64_t k) const;  // N_k
    double subbasis_level_weight(std::uint64_t k) const;     // a^{-k}

  private:
    double tail_value(std::uint64_t i) const;

    std::vector<double> prefix_;
    Tail tail_;
    bool sorted_ = false;

    // memoized subbasis cutpoints
    mutable std::mutex mu_;
    mutable std::vector<std::uint64_t> cutpoints_;
};

// notsubbasis block helpers (shared with the seqlab closed forms)
std::uint64_t notsubbasis_block_of(std::uint64_t i);      // n with 4^{n^2} <= i < 4^{(n+1)^2}
double notsubbasis_value(std::uint64_t i, bool beta_role);

}  // namespace oplab
