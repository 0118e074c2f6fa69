#include "oplab/genint.hpp"

#include <algorithm>
#include <numeric>

namespace oplab {

namespace {

constexpr unsigned kHorizonBits = 4096;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw OverflowError("generalized-integer addition overflows");
    return a + b;
}

// smallest m with 4^m >= i, i >= 1
std::uint64_t ceil_log4(const BigInt& i) {
    if (i <= 1) return 0;
    unsigned b = boost::multiprecision::msb(i);  // 2^b <= i
    std::uint64_t cl2 = (BigInt(1) << b) == i ? b : b + 1;
    return (cl2 + 1) / 2;
}

BigInt pow4(std::uint64_t e) { return BigInt(1) << (2 * e); }

}  // namespace

GenInt genint_diff(GenInt a, GenInt b) {
    if (a.inf && b.inf) return GenInt::of(0);
    if (a.inf || b.inf) return GenInt::infinity();
    return GenInt::of(a.v > b.v ? a.v - b.v : b.v - a.v);
}

GenIntSeq::GenIntSeq(std::vector<GenInt> prefix, GenTail tail, GenIntSeqPtr base)
    : prefix_(std::move(prefix)), tail_(std::move(tail)), base_(std::move(base)) {
    for (std::size_t i = 1; i < prefix_.size(); ++i)
        if (prefix_[i] < prefix_[i - 1])
            throw InvalidInputError("GenIntSeq: prefix decreases at index " +
                                    std::to_string(i + 1));
    if (tail_.kind == GenTailKind::PhiImage && (!tail_.blocks || !tail_.point))
        throw InvalidInputError("GenIntSeq: PhiImage tail needs blocks and a grid point");
    if (!prefix_.empty() && tail_.kind != GenTailKind::PhiImage) {
        // the first tail value must not drop below the prefix
        GenInt first = at(prefix_.size() + 1);
        if (first < prefix_.back())
            throw InvalidInputError("GenIntSeq: tail drops below the prefix");
    }
    if (base_) {
        std::uint64_t check = std::max<std::uint64_t>(prefix_.size(), 8);
        for (std::uint64_t i = 1; i <= check; ++i)
            if (at(i) < base_->at(i))
                throw PreconditionError("GenIntSeq: entry " + std::to_string(i) +
                                        " drops below the base sequence");
    }
}

GenInt GenIntSeq::at(std::uint64_t i) const {
    if (i == 0) throw RangeError("GenIntSeq index is 1-based");
    if (i <= prefix_.size()) return prefix_[i - 1];
    switch (tail_.kind) {
        case GenTailKind::Const:
            return tail_.value;
        case GenTailKind::Arith: {
            std::uint64_t off = i - prefix_.size() - 1;
            if (tail_.step != 0 && off > (std::numeric_limits<std::uint64_t>::max() -
                                          tail_.v0) / tail_.step)
                throw OverflowError("GenIntSeq: arithmetic tail overflows");
            return GenInt::of(tail_.v0 + tail_.step * off);
        }
        case GenTailKind::Log4:
            return GenInt::of(checked_add(1, ceil_log4(BigInt(i))));
        case GenTailKind::PhiImage:
            return tail_.blocks->phi_value(i, *tail_.point);
    }
    throw Error("GenIntSeq: unreachable tail kind");
}

GenBig GenIntSeq::at_big(const BigInt& i) const {
    if (i <= BigInt(std::numeric_limits<std::uint64_t>::max()) &&
        tail_.kind != GenTailKind::Log4) {
        GenInt g = at(i.convert_to<std::uint64_t>());
        return {BigInt(g.v), g.inf};
    }
    switch (tail_.kind) {
        case GenTailKind::Const:
            return {BigInt(tail_.value.v), tail_.value.inf};
        case GenTailKind::Arith: {
            BigInt off = i - prefix_.size() - 1;
            return {BigInt(tail_.v0) + BigInt(tail_.step) * off, false};
        }
        case GenTailKind::Log4:
            if (i <= BigInt(prefix_.size())) {
                GenInt g = prefix_[i.convert_to<std::size_t>() - 1];
                return {BigInt(g.v), g.inf};
            }
            return {BigInt(1) + ceil_log4(i), false};
        case GenTailKind::PhiImage:
            throw PreconditionError("GenIntSeq: big-index access unsupported for images");
    }
    throw Error("GenIntSeq: unreachable tail kind");
}

std::vector<GenInt> GenIntSeq::materialize(std::uint64_t depth) const {
    std::vector<GenInt> out;
    out.reserve(depth);
    for (std::uint64_t i = 1; i <= depth; ++i) out.push_back(at(i));
    return out;
}

bool GenIntSeq::pow4_sum_diverges() const {
    switch (tail_.kind) {
        case GenTailKind::Const:
            return !tail_.value.inf;
        case GenTailKind::Arith:
            return tail_.step == 0;
        case GenTailKind::Log4:
            return true;  // each scale contributes mass 3/16
        case GenTailKind::PhiImage:
            return true;  // block k carries mass > 4^{2k - (k-1)}
    }
    return false;
}

std::optional<BigInt> GenIntSeq::run_end(const BigInt& i) const {
    if (i <= 0) throw RangeError("GenIntSeq index is 1-based");
    if (i <= BigInt(prefix_.size())) return i;  // treat prefix entries as unit runs
    switch (tail_.kind) {
        case GenTailKind::Const:
            return std::nullopt;
        case GenTailKind::Arith:
            return tail_.step == 0 ? std::nullopt : std::optional<BigInt>(i);
        case GenTailKind::Log4: {
            std::uint64_t m = ceil_log4(i);
            BigInt end = pow4(m);
            return end < BigInt(prefix_.size()) + 1 ? BigInt(prefix_.size()) + 1 : end;
        }
        case GenTailKind::PhiImage:
            throw PreconditionError("GenIntSeq: run scan unsupported for images");
    }
    return std::nullopt;
}

XiPoint::XiPoint(std::vector<std::uint64_t> prefix, XiTail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    for (std::size_t i = 0; i < prefix_.size(); ++i)
        if (prefix_[i] > i)
            throw InvalidInputError("XiPoint: entry " + std::to_string(i + 1) +
                                    " exceeds its coordinate range");
    if (tail_.kind == XiTailKind::BEpsilon) {
        if (tail_.m == 0) throw InvalidInputError("XiPoint: modulus must be >= 1");
        if (tail_.bits.size() != tail_.m)
            throw InvalidInputError("XiPoint: bit vector length must equal the modulus");
    }
}

std::uint64_t XiPoint::at(std::uint64_t i) const {
    if (i == 0) throw RangeError("XiPoint index is 1-based");
    if (i <= prefix_.size()) return prefix_[i - 1];
    switch (tail_.kind) {
        case XiTailKind::Zero:
            return 0;
        case XiTailKind::Cap:
            return i - 1;
        case XiTailKind::BEpsilon: {
            std::uint64_t cls = (i - 1) % tail_.m;
            return tail_.bits[cls] ? i - 1 : 0;
        }
    }
    return 0;
}

std::vector<std::uint64_t> XiPoint::materialize(std::uint64_t depth) const {
    std::vector<std::uint64_t> out;
    out.reserve(depth);
    for (std::uint64_t i = 1; i <= depth; ++i) out.push_back(at(i));
    return out;
}

std::optional<std::uint64_t> xi_sup_diff(const XiPoint& b, const XiPoint& c) {
    // normalize each tail to (modulus, bit-per-class)
    auto norm = [](const XiPoint& x) -> std::pair<std::uint64_t, std::vector<bool>> {
        switch (x.tail().kind) {
            case XiTailKind::Zero:
                return {1, {false}};
            case XiTailKind::Cap:
                return {1, {true}};
            case XiTailKind::BEpsilon:
                return {x.tail().m, x.tail().bits};
        }
        return {1, {false}};
    };
    auto [mb, bb] = norm(b);
    auto [mc, bc] = norm(c);
    std::uint64_t period = std::lcm(mb, mc);
    std::uint64_t settle = std::max(b.prefix().size(), c.prefix().size());
    // beyond the prefixes the difference is unbounded iff some combined
    // residue class gets i-1 on one side and 0 on the other
    for (std::uint64_t r = 0; r < period; ++r)
        if (bb[r % mb] != bc[r % mc]) return std::nullopt;
    std::uint64_t sup = 0;
    for (std::uint64_t i = 1; i <= settle + period; ++i) {
        std::uint64_t x = b.at(i), y = c.at(i);
        sup = std::max(sup, x > y ? x - y : y - x);
    }
    return sup;
}

Borel2Blocks::Borel2Blocks(GenIntSeqPtr alpha, std::uint64_t k_max)
    : alpha_(std::move(alpha)) {
    if (!alpha_) throw InvalidInputError("Borel2Blocks: null base sequence");
    if (!alpha_->pow4_sum_diverges())
        throw PreconditionError(
            "Borel2Blocks: base sequence lacks a divergence certificate for sum 4^{-a_i}");
    BigInt cursor = 1;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        Block blk;
        blk.p = cursor;
        DyadicSum mass;
        BigInt threshold = pow4(2 * k);
        BigInt i = cursor;
        BigInt q;
        while (true) {
            GenBig a = alpha_->at_big(i);
            if (a.inf)
                throw PreconditionError("Borel2Blocks: infinite entries stall the mass scan");
            if (boost::multiprecision::msb(a.v + 1) >= 63)
                throw OverflowError("Borel2Blocks: exponent out of range");
            std::uint64_t e = a.v.convert_to<std::uint64_t>();
            std::optional<BigInt> rend = alpha_->run_end(i);
            BigInt need = mass.deficit_count(threshold, e);
            if (!rend || i + need - 1 <= *rend) {
                q = i + need;  // first index past the block
                break;
            }
            mass.add_pow4(e, *rend - i + 1);
            i = *rend + 1;
            if (boost::multiprecision::msb(i) >= kHorizonBits) {
                hit_horizon_ = true;
                return;  // block k not completed
            }
        }
        blk.q = q;
        // p_{k+1}: first j >= q with alpha_j > k + q
        BigInt target = BigInt(k) + q;
        BigInt j = q;
        bool found = false;
        while (true) {
            GenBig a = alpha_->at_big(j);
            if (a.inf || a.v > target) {
                blk.next_alpha = a;
                blk.p_next = j;
                blk.next_alpha_known = true;
                found = true;
                break;
            }
            std::optional<BigInt> rend = alpha_->run_end(j);
            if (!rend) break;  // constant forever, never exceeds
            if (alpha_->tail().kind == GenTailKind::Log4 && j > BigInt(alpha_->prefix().size())) {
                // closed-form jump: 1 + ceil(log4 j) > t iff j > 4^{t-1}
                if (target >= BigInt(2) * kHorizonBits) {
                    hit_horizon_ = true;
                    break;
                }
                BigInt cand = pow4(target.convert_to<std::uint64_t>() - 1) + 1;
                j = std::max(cand, BigInt(j + 1));
            } else {
                j = *rend + 1;
            }
            if (boost::multiprecision::msb(j) >= kHorizonBits) {
                hit_horizon_ = true;
                break;
            }
        }
        blocks_.push_back(blk);
        if (!found) return;  // later blocks are out of reach
        cursor = blk.p_next;
    }
}

GenInt Borel2Blocks::phi_value(std::uint64_t j, const XiPoint& b) const {
    if (j == 0) throw RangeError("phi_value: index is 1-based");
    BigInt J(j);
    GenInt aj = alpha_->at(j);
    if (aj.inf) throw PreconditionError("phi_value: infinite base entry");
    for (std::size_t k0 = 0; k0 < blocks_.size(); ++k0) {
        const Block& blk = blocks_[k0];
        std::uint64_t k = k0 + 1;
        if (J < blk.p)
            throw PreconditionError("phi_value: index precedes the first block");
        if (J < blk.q) return GenInt::of(checked_add(aj.v, b.at(k)));
        bool in_gap = blk.next_alpha_known ? J < blk.p_next : k0 + 1 == blocks_.size();
        if (in_gap) {
            std::uint64_t shifted = checked_add(aj.v, k);
            if (blk.next_alpha_known) {
                if (blk.next_alpha.inf || BigInt(shifted) <= blk.next_alpha.v)
                    return GenInt::of(shifted);
                if (boost::multiprecision::msb(blk.next_alpha.v + 1) >= 63)
                    throw OverflowError("phi_value: gap value out of range");
                return GenInt::of(blk.next_alpha.v.convert_to<std::uint64_t>());
            }
            // the next cutpoint is unknown but its value exceeds k + q
            if (BigInt(shifted) <= BigInt(k) + blk.q) return GenInt::of(shifted);
            throw PreconditionError("phi_value: gap value undecidable without the next block");
        }
    }
    throw PreconditionError("phi_value: index " + std::to_string(j) +
                            " lies beyond the materialized blocks");
}

}  // namespace oplab
