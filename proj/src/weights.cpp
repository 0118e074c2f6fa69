#include "oplab/weights.hpp"

#include <cmath>
#include <limits>

namespace oplab {

namespace {

// 4^e, throwing once the result leaves the exact uint64 range
std::uint64_t pow4_checked(std::uint64_t e) {
    if (e >= 32) throw OverflowError("pow4: exponent " + std::to_string(e) + " overflows");
    return std::uint64_t{1} << (2 * e);
}

}  // namespace

std::uint64_t notsubbasis_block_of(std::uint64_t i) {
    // n with 4^{n^2} <= i < 4^{(n+1)^2}
    std::uint64_t n = 0;
    while ((n + 1) * (n + 1) < 32 && pow4_checked((n + 1) * (n + 1)) <= i) ++n;
    return n;
}

double notsubbasis_value(std::uint64_t i, bool beta_role) {
    std::uint64_t n = notsubbasis_block_of(i);
    double e = beta_role ? static_cast<double>(n * n + n) : static_cast<double>(n * n);
    return std::exp2(-e);
}

WeightSequence::WeightSequence(std::vector<double> prefix, Tail tail, bool sorted)
    : prefix_(std::move(prefix)), tail_(std::move(tail)), sorted_(sorted) {
    for (double v : prefix_)
        if (!(v >= 0.0 && v <= 1.0))
            throw InvalidInputError("weight sequence entry outside [0,1]");
    if (tail_.kind == TailKind::Subbasis && !(tail_.a > 1.0 && tail_.a < 2.0))
        throw InvalidInputError("subbasis parameter a must lie in (1,2)");
    if (sorted_) {
        for (std::size_t i = 1; i < prefix_.size(); ++i)
            if (prefix_[i] > prefix_[i - 1])
                throw InvalidInputError("sorted flag set but prefix increases at index " +
                                        std::to_string(i + 1));
    }
}

WeightSequence::WeightSequence(const WeightSequence& o)
    : prefix_(o.prefix_), tail_(o.tail_), sorted_(o.sorted_) {
    std::lock_guard<std::mutex> lock(o.mu_);
    cutpoints_ = o.cutpoints_;
}

WeightSequence& WeightSequence::operator=(const WeightSequence& o) {
    if (this == &o) return *this;
    std::scoped_lock lock(mu_, o.mu_);
    prefix_ = o.prefix_;
    tail_ = o.tail_;
    sorted_ = o.sorted_;
    cutpoints_ = o.cutpoints_;
    return *this;
}

WeightSequence WeightSequence::from_prefix(std::vector<double> prefix) {
    return WeightSequence(std::move(prefix), Tail{});
}

double WeightSequence::at(std::uint64_t i) const {
    if (i == 0) throw RangeError("weight sequence index is 1-based");
    if (i <= prefix_.size()) return prefix_[i - 1];
    return tail_value(i);
}

std::vector<double> WeightSequence::materialize(std::uint64_t depth) const {
    std::vector<double> out;
    out.reserve(depth);
    for (std::uint64_t i = 1; i <= depth; ++i) out.push_back(at(i));
    return out;
}

double WeightSequence::tail_value(std::uint64_t i) const {
    switch (tail_.kind) {
        case TailKind::Zero:
            return 0.0;
        case TailKind::Blocks: {
            std::uint64_t pos = i - prefix_.size();  // 1-based within the blocks
            for (const auto& b : tail_.blocks) {
                if (pos <= b.count) return b.value;
                pos -= b.count;
            }
            return 0.0;
        }
        case TailKind::NotSubbasis:
            return notsubbasis_value(i, tail_.beta_role);
        case TailKind::Subbasis: {
            if (i % 2 == 1) return 0.0;
            std::uint64_t j = i / 2;
            std::uint64_t k = 0;
            while (subbasis_cutpoint(k + 1) <= j) ++k;
            return subbasis_level_weight(k);
        }
        case TailKind::Power: {
            double v = tail_.coeff * std::pow(static_cast<double>(i), -tail_.power);
            return std::min(1.0, v);
        }
    }
    return 0.0;
}

std::uint64_t WeightSequence::subbasis_cutpoint(std::uint64_t k) const {
    if (tail_.kind != TailKind::Subbasis)
        throw PreconditionError("subbasis_cutpoint: tail is not a subbasis schedule");
    std::lock_guard<std::mutex> lock(mu_);
    if (cutpoints_.empty()) cutpoints_.push_back(1);  // N_0 = 1
    double base = tail_.growth > 0.0 ? tail_.growth
                                     : std::max(2.5, tail_.a * tail_.a + 0.25);
    while (cutpoints_.size() <= k) {
        std::uint64_t prev = cutpoints_.back();
        if (prev > (std::numeric_limits<std::uint64_t>::max() >> 2))
            throw OverflowError("subbasis cutpoints exceed the exact integer range");
        double target = std::pow(base, static_cast<double>(cutpoints_.size()));
        std::uint64_t next = 2 * prev + 1;
        if (target > static_cast<double>(next) && target < 9e18)
            next = static_cast<std::uint64_t>(std::llround(target));
        cutpoints_.push_back(next);
    }
    return cutpoints_[k];
}

double WeightSequence::subbasis_level_weight(std::uint64_t k) const {
    if (tail_.kind != TailKind::Subbasis)
        throw PreconditionError("subbasis_level_weight: tail is not a subbasis schedule");
    return std::pow(tail_.a, -static_cast<double>(k));
}

std::optional<bool> WeightSequence::hs_sum_diverges() const {
    switch (tail_.kind) {
        case TailKind::Zero:
            return false;
        case TailKind::Blocks:
            return false;  // finitely many nonzero tail entries
        case TailKind::NotSubbasis:
            // block n holds ~4^{n^2+2n} entries of square 4^{-n^2} (alpha role)
            // or 4^{-n^2-n} (beta role); block mass grows like 4^{2n} or 4^{n}
            return true;
        case TailKind::Subbasis: {
            // block k holds N_{k+1}-N_k entries of square a^{-2k}; with the
            // default growth base > a^2 the block masses grow geometrically
            double base = tail_.growth > 0.0 ? tail_.growth
                                             : std::max(2.5, tail_.a * tail_.a + 0.25);
            return base > tail_.a * tail_.a;
        }
        case TailKind::Power:
            return 2.0 * tail_.power <= 1.0;
    }
    return std::nullopt;
}

}  // namespace oplab
