#include "oplab/seqlab.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace oplab {

namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational pow4_inv(std::uint64_t e) {
    return Rational(1, BigInt(1) << (2 * e));
}

// ---- weight-sequence tail analysis ----

enum class TailStatus { NoForced, Divergent, Unknown };

struct TailReport {
    TailStatus status = TailStatus::Unknown;
    std::uint64_t settled = 0;  // no forced indices beyond this point
    std::string note;
};

bool same_tail(const Tail& a, const Tail& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case TailKind::Zero:
            return true;
        case TailKind::Blocks:
            if (a.blocks.size() != b.blocks.size()) return false;
            for (std::size_t i = 0; i < a.blocks.size(); ++i)
                if (a.blocks[i].count != b.blocks[i].count ||
                    a.blocks[i].value != b.blocks[i].value)
                    return false;
            return true;
        case TailKind::NotSubbasis:
            return a.beta_role == b.beta_role;
        case TailKind::Subbasis:
            return a.a == b.a && a.growth == b.growth;
        case TailKind::Power:
            return a.coeff == b.coeff && a.power == b.power;
    }
    return false;
}

std::uint64_t blocks_support_end(const WeightSequence& w) {
    std::uint64_t end = w.prefix().size();
    for (const auto& b : w.tail().blocks) end += b.count;
    return end;
}

// Can any index beyond the scanned range satisfy beta_i > K alpha_i, and if
// so, does the forced mass sum(beta_i^2) diverge? Decided per tail-rule pair.
TailReport weight_tail_status(const WeightSequence& alpha, const WeightSequence& beta,
                              std::uint64_t K) {
    const Tail& ta = alpha.tail();
    const Tail& tb = beta.tail();
    std::uint64_t pa = alpha.prefix().size(), pb = beta.prefix().size();
    std::uint64_t settle = std::max(pa, pb);

    if (tb.kind == TailKind::Zero)
        return {TailStatus::NoForced, pb, "beta vanishes beyond its prefix"};
    if (tb.kind == TailKind::Blocks)
        return {TailStatus::NoForced, blocks_support_end(beta),
                "beta has finite support"};
    if (same_tail(ta, tb) && K >= 1)
        return {TailStatus::NoForced, settle, "identical tail rules"};
    if (ta.kind == TailKind::NotSubbasis && tb.kind == TailKind::NotSubbasis) {
        if (tb.beta_role && !ta.beta_role && K >= 1)
            return {TailStatus::NoForced, settle,
                    "pointwise beta <= alpha beyond the prefixes"};
        if (!tb.beta_role && ta.beta_role)
            return {TailStatus::Divergent, settle,
                    "forced block n has mass about 3*4^{2n}(1 - K^2 4^{-n}) for 2^n > K"};
    }
    if (ta.kind == TailKind::Power && tb.kind == TailKind::Power) {
        double pA = ta.power, pB = tb.power, cA = ta.coeff, cB = tb.coeff;
        if (pB > pA || (pB == pA && cB <= K * cA)) {
            std::uint64_t h = settle;
            if (pB > pA) {
                double cross = std::pow(cB / (K * cA), 1.0 / (pB - pA));
                h = std::max<std::uint64_t>(h, static_cast<std::uint64_t>(cross) + 1);
            }
            return {TailStatus::NoForced, h, "beta decays faster beyond the crossover"};
        }
        // all large indices forced
        if (2.0 * pB <= 1.0)
            return {TailStatus::Divergent, settle,
                    "forced tail mass is a divergent power sum"};
        return {TailStatus::NoForced, settle,
                "whole tail forced but square-summable (power rule); "
                "the exceptional set extends past the scan"};
    }
    return {TailStatus::Unknown, settle, ""};
}

struct WeightScan {
    std::vector<std::uint64_t> forced;
    double mass = 0.0;
};

WeightScan weight_forced_scan(const WeightSequence& alpha, const WeightSequence& beta,
                              std::uint64_t K, std::uint64_t depth) {
    WeightScan s;
    for (std::uint64_t i = 1; i <= depth; ++i) {
        double a = alpha.at(i), b = beta.at(i);
        if (b > static_cast<double>(K) * a) {
            s.forced.push_back(i);
            s.mass += b * b;
        }
    }
    return s;
}

// ---- generalized-integer tail analysis ----

struct GenTailReport {
    TailStatus status = TailStatus::Unknown;
    bool finite_forced_mass = false;  // whole tail forced, mass below is exact
    Rational tail_mass;               // bound on forced mass beyond the scan
    std::string note;
};

struct LinearTail {
    bool ok = false;
    bool inf = false;
    std::uint64_t start = 0;  // first tail index
    std::uint64_t v0 = 0;
    std::uint64_t step = 0;
};

LinearTail linearize(const GenIntSeq& s) {
    LinearTail lt;
    const GenTail& t = s.tail();
    lt.start = s.prefix().size() + 1;
    if (t.kind == GenTailKind::Const) {
        lt.ok = true;
        lt.inf = t.value.inf;
        lt.v0 = t.value.inf ? 0 : t.value.v;
        lt.step = 0;
    } else if (t.kind == GenTailKind::Arith) {
        lt.ok = true;
        lt.v0 = t.v0;
        lt.step = t.step;
    }
    return lt;
}

// sum_{i > d} 4^{-v(i)} for v(i) = v0 + step (i - start), step >= 1
Rational geometric_tail(const LinearTail& lt, std::uint64_t d) {
    if (lt.inf) return 0;
    std::uint64_t i0 = std::max(d + 1, lt.start);
    BigInt v_at_i0 = BigInt(lt.v0) + BigInt(lt.step) * (i0 - lt.start);
    if (lt.step == 0) throw PreconditionError("geometric_tail: step must be >= 1");
    if (v_at_i0 > 2000000) return 0;  // beyond any representable mass
    std::uint64_t c = v_at_i0.convert_to<std::uint64_t>();
    BigInt fours = BigInt(1) << (2 * lt.step);
    return pow4_inv(c) * Rational(fours, fours - 1);
}

GenTailReport gen_tail_status(const GenIntSeq& beta, const GenIntSeq& gamma,
                              std::uint64_t K, std::uint64_t depth) {
    GenTailReport r;
    const GenTail& tb = beta.tail();
    const GenTail& tc = gamma.tail();
    std::uint64_t settle = std::max(beta.prefix().size(), gamma.prefix().size());

    if (tb.kind == GenTailKind::PhiImage && tc.kind == GenTailKind::PhiImage) {
        // block systems are a deterministic function of the source sequence
        bool same_blocks =
            tb.blocks == tc.blocks ||
            (tb.blocks && tc.blocks && tb.blocks->alpha() == tc.blocks->alpha() &&
             tb.blocks->blocks().size() == tc.blocks->blocks().size());
        if (!same_blocks) {
            r.note = "images over different block systems";
            return r;
        }
        auto sup = xi_sup_diff(*tb.point, *tc.point);
        if (sup && *sup <= K) {
            r.status = TailStatus::NoForced;
            r.note = "block values differ by at most " + std::to_string(*sup);
            return r;
        }
        if (K < 32) {
            r.status = TailStatus::Divergent;
            r.note = "a forced block k carries mass above 2*4^{k+1} > K";
            return r;
        }
        return r;
    }
    if (tb.kind == GenTailKind::Log4 && tc.kind == GenTailKind::Log4) {
        if (depth >= settle) {
            r.status = TailStatus::NoForced;
            r.note = "identical log-scale tails";
        }
        return r;
    }
    bool b_log = tb.kind == GenTailKind::Log4, c_log = tc.kind == GenTailKind::Log4;
    if (b_log || c_log) {
        LinearTail other = linearize(b_log ? gamma : beta);
        if (!other.ok) return r;
        // the log-scale side alone carries infinite mass, and the gap between
        // a log tail and any linear tail is eventually above every K
        r.status = TailStatus::Divergent;
        r.note = "log-scale tail mass diverges on the forced set";
        return r;
    }
    LinearTail lb = linearize(beta), lc = linearize(gamma);
    if (!lb.ok || !lc.ok) return r;
    if (lb.inf && lc.inf) {
        r.status = TailStatus::NoForced;
        r.note = "both tails are infinite";
        return r;
    }
    auto eventual_gap_bounded = [&]() -> bool {
        if (lb.inf || lc.inf) return false;
        if (lb.step != lc.step) return false;
        // constant eventual difference
        BigInt i0 = std::max({lb.start, lc.start, depth + 1});
        BigInt vb = BigInt(lb.v0) + BigInt(lb.step) * (i0 - lb.start);
        BigInt vc = BigInt(lc.v0) + BigInt(lc.step) * (i0 - lc.start);
        BigInt d = vb > vc ? vb - vc : vc - vb;
        return d <= K;
    };
    if (eventual_gap_bounded()) {
        r.status = TailStatus::NoForced;
        r.note = "eventual difference within K";
        return r;
    }
    // whole tail treated as forced; mass decided by the steps
    bool b_heavy = !lb.inf && lb.step == 0;
    bool c_heavy = !lc.inf && lc.step == 0;
    if (b_heavy || c_heavy) {
        r.status = TailStatus::Divergent;
        r.note = "a constant finite tail contributes unbounded forced mass";
        return r;
    }
    r.status = TailStatus::NoForced;  // decided below via the exact mass
    r.finite_forced_mass = true;
    r.tail_mass = 0;
    if (!lb.inf) r.tail_mass += geometric_tail(lb, depth);
    if (!lc.inf) r.tail_mass += geometric_tail(lc, depth);
    r.note = "forced tail mass bounded by exact geometric sums";
    return r;
}

}  // namespace

EquivVerdict dominates(const WeightSequence& alpha, const WeightSequence& beta,
                       std::uint64_t depth, std::uint64_t k_max) {
    if (!alpha.sorted_flag() || !beta.sorted_flag())
        throw PreconditionError("dominates: sequences must carry the sorted flag");
    if (depth == 0 || k_max == 0)
        throw InvalidInputError("dominates: depth and K range must be >= 1");

    bool all_divergent = true;
    std::string divergent_note;
    for (std::uint64_t K = 1; K <= k_max; ++K) {
        TailReport tr = weight_tail_status(alpha, beta, K);
        if (tr.status != TailStatus::Divergent) all_divergent = false;
        else divergent_note = tr.note;
        if (tr.status == TailStatus::NoForced && depth >= tr.settled) {
            WeightScan s = weight_forced_scan(alpha, beta, K, depth);
            EquivVerdict v;
            v.kind = VerdictKind::Equivalent;
            v.K = K;
            v.witness_set = std::move(s.forced);
            v.witness_note = tr.note;
            v.depth = depth;
            return v;
        }
    }
    if (all_divergent) {
        EquivVerdict v;
        v.kind = VerdictKind::NotEquivalent;
        v.witness_note = divergent_note;
        v.depth = depth;
        for (std::uint64_t d : {depth / 16, depth / 4, depth}) {
            if (d == 0) continue;
            v.certificate.emplace_back(d, weight_forced_scan(alpha, beta, k_max, d).mass);
        }
        return v;
    }
    EquivVerdict v;
    v.kind = VerdictKind::Inconclusive;
    v.depth = depth;
    return v;
}

EquivVerdict seq_equivalent(const WeightSequence& alpha, const WeightSequence& beta,
                            std::uint64_t depth, std::uint64_t k_max) {
    EquivVerdict fwd = dominates(alpha, beta, depth, k_max);
    EquivVerdict bwd = dominates(beta, alpha, depth, k_max);
    if (fwd.kind == VerdictKind::NotEquivalent) return fwd;
    if (bwd.kind == VerdictKind::NotEquivalent) return bwd;
    if (fwd.kind == VerdictKind::Equivalent && bwd.kind == VerdictKind::Equivalent) {
        EquivVerdict v;
        v.kind = VerdictKind::Equivalent;
        v.K = std::max(fwd.K, bwd.K);
        v.witness_set = fwd.witness_set;
        for (std::uint64_t i : bwd.witness_set)
            if (std::find(v.witness_set.begin(), v.witness_set.end(), i) ==
                v.witness_set.end())
                v.witness_set.push_back(i);
        std::sort(v.witness_set.begin(), v.witness_set.end());
        v.witness_note = "union of the one-sided exceptional sets";
        v.depth = depth;
        return v;
    }
    EquivVerdict v;
    v.kind = VerdictKind::Inconclusive;
    v.depth = depth;
    return v;
}

GenInt n_map(const SingularSpectrum& spectrum, std::size_t k) {
    if (k == 0 || k > spectrum.size())
        throw RangeError("n_map: index outside the spectrum");
    double s = spectrum.at(k);
    if (s == 0.0) return GenInt::infinity();
    if (s > 1.0 + 1e-12) throw PreconditionError("n_map: singular value above 1");
    if (s >= 1.0) return GenInt::of(1);
    // largest l with 2^{1-l} >= s
    std::uint64_t l = static_cast<std::uint64_t>(std::floor(1.0 - std::log2(s)));
    while (std::ldexp(1.0, -static_cast<int>(l)) >= s) ++l;          // 2^{1-(l+1)} >= s
    while (l > 1 && std::ldexp(1.0, 1 - static_cast<int>(l)) < s) --l;
    return GenInt::of(l);
}

std::vector<YAngle> y_map(const GenIntSeq& beta, const SingularSpectrum& base_spectrum,
                          std::uint64_t depth) {
    std::vector<YAngle> out;
    out.reserve(depth);
    for (std::uint64_t i = 1; i <= depth; ++i) {
        double s = base_spectrum.at(i);
        GenInt b = beta.at(i);
        if (b.inf) {
            out.push_back({i, 0.0, 1.0});
            continue;
        }
        double t = b.v > 1074 ? 0.0 : std::ldexp(1.0, -static_cast<int>(b.v));
        if (t > s * (1.0 + 1e-12))
            throw PreconditionError("y_map: entry " + std::to_string(i) +
                                    " drops below the base (2^{-b_i} exceeds s_i)");
        if (s == 0.0) {
            out.push_back({i, 0.0, 1.0});
            continue;
        }
        double sn = std::min(1.0, 1.5 * t / s);
        out.push_back({i, sn, std::sqrt(std::max(0.0, 1.0 - sn * sn))});
    }
    return out;
}

StarWitness star_witness(const GenIntSeq& beta, const GenIntSeq& gamma, std::uint64_t K,
                         std::uint64_t n) {
    StarWitness w;
    for (std::uint64_t i = 1; i <= n; ++i) {
        GenInt b = beta.at(i), c = gamma.at(i);
        GenInt d = genint_diff(b, c);
        if (d.inf || d.v > K) {
            w.forced.push_back(i);
            if (!b.inf) w.mass.add_pow4(b.v);
            if (!c.inf) w.mass.add_pow4(c.v);
        }
    }
    return w;
}

bool star_equiv_at(const GenIntSeq& beta, const GenIntSeq& gamma, std::uint64_t K,
                   std::uint64_t n) {
    if (n == 0) throw InvalidInputError("star_equiv_at: depth must be >= 1");
    return star_witness(beta, gamma, K, n).mass.leq_int(K);
}

EquivVerdict star_equiv(const GenIntSeq& beta, const GenIntSeq& gamma,
                        std::uint64_t depth, std::uint64_t k_max) {
    if (depth == 0) throw InvalidInputError("star_equiv: depth must be >= 1");
    bool all_refuted = true;
    std::string divergent_note;
    for (std::uint64_t K = 0; K <= k_max; ++K) {
        StarWitness w = star_witness(beta, gamma, K, depth);
        if (!w.mass.leq_int(K)) continue;  // refuted at this K, conclusively
        GenTailReport tr = gen_tail_status(beta, gamma, K, depth);
        if (tr.status == TailStatus::Divergent) {
            divergent_note = tr.note;
            continue;
        }
        if (tr.status == TailStatus::Unknown) {
            all_refuted = false;
            continue;
        }
        if (tr.finite_forced_mass) {
            // exact total: forced mass at depth plus the tail bound
            Rational total = tr.tail_mass;
            for (std::uint64_t i : w.forced) {
                GenInt b = beta.at(i), c = gamma.at(i);
                if (!b.inf) total += pow4_inv(b.v);
                if (!c.inf) total += pow4_inv(c.v);
            }
            if (total > K) {
                all_refuted = false;  // bound inconclusive for this K
                continue;
            }
        }
        EquivVerdict v;
        v.kind = VerdictKind::Equivalent;
        v.K = K;
        v.witness_set = std::move(w.forced);
        v.witness_note = tr.note;
        v.depth = depth;
        return v;
    }
    if (all_refuted) {
        EquivVerdict v;
        v.kind = VerdictKind::NotEquivalent;
        v.witness_note = divergent_note;
        v.depth = depth;
        for (std::uint64_t d : {depth / 16, depth / 4, depth}) {
            if (d == 0) continue;
            v.certificate.emplace_back(d,
                                       star_witness(beta, gamma, k_max, d).mass.to_double());
        }
        return v;
    }
    EquivVerdict v;
    v.kind = VerdictKind::Inconclusive;
    v.depth = depth;
    return v;
}

GenIntSeq borel2_phi(const XiPoint& b, GenIntSeqPtr alpha, std::uint64_t depth,
                     std::uint64_t k_max) {
    auto blocks = std::make_shared<const Borel2Blocks>(alpha, k_max);
    GenTail tail;
    tail.kind = GenTailKind::PhiImage;
    tail.blocks = blocks;
    tail.point = std::make_shared<const XiPoint>(b);
    GenIntSeq out({}, tail, alpha);
    out.materialize(depth);  // throws when the depth is not decidable
    return out;
}

XiPoint b_epsilon(const std::vector<bool>& bits) {
    if (bits.empty()) throw InvalidInputError("b_epsilon: empty bit pattern");
    XiTail t;
    t.kind = XiTailKind::BEpsilon;
    t.bits = bits;
    t.m = bits.size();
    return XiPoint({}, t);
}

std::uint64_t eks_discrepancy(const XiPoint& b, const XiPoint& c, std::uint64_t depth) {
    std::uint64_t sup = 0;
    for (std::uint64_t i = 1; i <= depth; ++i) {
        std::uint64_t x = b.at(i), y = c.at(i);
        sup = std::max(sup, x > y ? x - y : y - x);
    }
    return sup;
}

}  // namespace oplab
