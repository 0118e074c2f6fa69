#include <cmath>

#include "doctest.h"
#include "oplab/seqlab.hpp"

using namespace oplab;

namespace {

WeightSequence sorted_seq(std::vector<double> prefix, Tail tail = {}) {
    return WeightSequence(std::move(prefix), std::move(tail), /*sorted=*/true);
}

GenIntSeq const_tail_seq(std::vector<GenInt> prefix, GenInt value) {
    GenTail t;
    t.kind = GenTailKind::Const;
    t.value = value;
    return GenIntSeq(std::move(prefix), t);
}

GenIntSeq arith_seq(std::uint64_t v0, std::uint64_t step) {
    GenTail t;
    t.kind = GenTailKind::Arith;
    t.v0 = v0;
    t.step = step;
    return GenIntSeq({}, t);
}

Tail notsubbasis_tail(bool beta_role) {
    Tail t;
    t.kind = TailKind::NotSubbasis;
    t.beta_role = beta_role;
    return t;
}

}  // namespace

TEST_CASE("a sequence dominates itself with constant 1 and no exceptions") {
    WeightSequence a = sorted_seq({1.0, 0.5, 0.25});
    EquivVerdict v = dominates(a, a, 100, 8);
    CHECK(v.kind == VerdictKind::Equivalent);
    CHECK(v.K == 1);
    CHECK(v.witness_set.empty());

    EquivVerdict e = seq_equivalent(a, a, 100, 8);
    CHECK(e.kind == VerdictKind::Equivalent);
    CHECK(e.K == 1);
}

TEST_CASE("domination requires the sorted flag") {
    WeightSequence unsorted({0.5, 1.0});
    WeightSequence a = sorted_seq({1.0, 0.5});
    CHECK_THROWS_AS(dominates(unsorted, a, 100, 8), PreconditionError);
    CHECK_THROWS_AS(dominates(a, unsorted, 100, 8), PreconditionError);
    CHECK_THROWS_AS(dominates(a, a, 0, 8), InvalidInputError);
}

TEST_CASE("finite disagreements land in the witness set") {
    WeightSequence a = sorted_seq({1.0, 0.5, 0.25, 0.125});
    WeightSequence b = sorted_seq({1.0, 0.9, 0.25, 0.125});
    EquivVerdict v = seq_equivalent(a, b, 1000, 8);
    CHECK(v.kind == VerdictKind::Equivalent);
    CHECK(v.K == 1);
    REQUIRE(v.witness_set.size() == 1);
    CHECK(v.witness_set[0] == 2);
}

TEST_CASE("the block-scale pair separates at every constant") {
    WeightSequence slow = sorted_seq({}, notsubbasis_tail(false));
    WeightSequence fast = sorted_seq({}, notsubbasis_tail(true));

    // fast decays below slow pointwise, so slow dominates it
    EquivVerdict fwd = dominates(slow, fast, 10000, 8);
    CHECK(fwd.kind == VerdictKind::Equivalent);
    CHECK(fwd.K == 1);
    CHECK(fwd.witness_set.empty());

    // the reverse direction fails for every K: far blocks carry divergent mass
    EquivVerdict bwd = dominates(fast, slow, 10000, 8);
    CHECK(bwd.kind == VerdictKind::NotEquivalent);
    CHECK(!bwd.certificate.empty());
    for (std::size_t i = 1; i < bwd.certificate.size(); ++i) {
        CHECK(bwd.certificate[i - 1].first < bwd.certificate[i].first);
        CHECK(bwd.certificate[i - 1].second <= bwd.certificate[i].second + 1e-12);
    }
    EquivVerdict eq = seq_equivalent(slow, fast, 10000, 8);
    CHECK(eq.kind == VerdictKind::NotEquivalent);
}

TEST_CASE("level map of a spectrum") {
    SingularSpectrum s{{1.0, 0.5, 0.125, 0.0}};
    CHECK(n_map(s, 1) == GenInt::of(1));
    CHECK(n_map(s, 2) == GenInt::of(2));
    CHECK(n_map(s, 3) == GenInt::of(4));
    CHECK(n_map(s, 4) == GenInt::infinity());
    CHECK_THROWS_AS(n_map(s, 0), RangeError);
    CHECK_THROWS_AS(n_map(s, 5), RangeError);
    SingularSpectrum big{{1.5}};
    CHECK_THROWS_AS(n_map(big, 1), PreconditionError);
}

TEST_CASE("angle frame realizes the level sequence and round-trips") {
    SingularSpectrum base{{1.0, 0.5, 0.25}};
    GenIntSeq beta = const_tail_seq({GenInt::of(1), GenInt::of(2)}, GenInt::infinity());
    auto angles = y_map(beta, base, 3);
    REQUIRE(angles.size() == 3);
    CHECK(angles[0].sin_phi == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(angles[1].sin_phi == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(angles[2].sin_phi == 0.0);
    CHECK(angles[2].cos_phi == 1.0);
    for (const auto& a : angles)
        CHECK(a.sin_phi * a.sin_phi + a.cos_phi * a.cos_phi ==
              doctest::Approx(1.0).epsilon(1e-14));

    // produced singular values s_i sin(phi_i) = 1.5 * 2^{-beta_i} invert exactly
    SingularSpectrum produced;
    for (int i = 0; i < 2; ++i) produced.values.push_back(base.at(i + 1) * angles[i].sin_phi);
    CHECK(n_map(produced, 1) == GenInt::of(1));
    CHECK(n_map(produced, 2) == GenInt::of(2));

    // the sine caps at 1 when the prescribed level nearly matches the base
    SingularSpectrum tight{{0.25}};
    auto capped = y_map(const_tail_seq({GenInt::of(2)}, GenInt::infinity()), tight, 1);
    CHECK(capped[0].sin_phi == doctest::Approx(1.0));

    // dropping below the base is rejected
    CHECK_THROWS_AS(y_map(const_tail_seq({GenInt::of(1)}, GenInt::infinity()), tight, 1),
                    PreconditionError);
}

TEST_CASE("star witness carries the exact forced mass") {
    GenIntSeq beta = const_tail_seq({GenInt::of(1), GenInt::of(2), GenInt::of(3)},
                                    GenInt::infinity());
    GenIntSeq gamma = const_tail_seq({GenInt::of(1), GenInt::of(4), GenInt::of(5)},
                                     GenInt::infinity());
    StarWitness w = star_witness(beta, gamma, 1, 3);
    REQUIRE(w.forced.size() == 2);
    CHECK(w.forced[0] == 2);
    CHECK(w.forced[1] == 3);
    // 4^{-2} + 4^{-4} + 4^{-3} + 4^{-5} = 85/1024
    CHECK(w.mass.to_fraction() == "85/1024");
    CHECK(star_equiv_at(beta, gamma, 1, 3));
    CHECK(star_equiv_at(beta, beta, 0, 50));
    CHECK_THROWS_AS(star_equiv_at(beta, gamma, 1, 0), InvalidInputError);
}

TEST_CASE("linear level tails with small geometric mass are equivalent") {
    GenIntSeq beta = arith_seq(1, 1);   // 1, 2, 3, ...
    GenIntSeq gamma = arith_seq(2, 2);  // 2, 4, 6, ...
    for (std::uint64_t n : {1ULL, 10ULL, 1000ULL}) CHECK(star_equiv_at(beta, gamma, 1, n));
    EquivVerdict v = star_equiv(beta, gamma, 50, 8);
    CHECK(v.kind == VerdictKind::Equivalent);
    CHECK(v.K == 1);
    // indices past the first are forced at K = 1 but their mass stays small
    CHECK(v.witness_set.size() == 49);
    CHECK(v.witness_set.front() == 2);
}

TEST_CASE("a finite constant level tail against a growing one is refuted") {
    GenIntSeq flat = const_tail_seq({}, GenInt::of(3));
    GenIntSeq grow = arith_seq(3, 1);
    EquivVerdict v = star_equiv(flat, grow, 1000, 8);
    CHECK(v.kind == VerdictKind::NotEquivalent);
    CHECK(!v.certificate.empty());
}

TEST_CASE("block reduction image of the zero point reproduces the source") {
    GenTail lt;
    lt.kind = GenTailKind::Log4;
    auto alpha = std::make_shared<const GenIntSeq>(GenIntSeq({}, lt));
    GenIntSeq image = borel2_phi(XiPoint(std::vector<std::uint64_t>{}), alpha, 100);
    // depth 100 sits inside the first block, whose grid value is 0
    for (std::uint64_t j = 1; j <= 100; ++j) CHECK(image.at(j) == alpha->at(j));
}

TEST_CASE("block reduction requires a divergence certificate") {
    auto finite = std::make_shared<const GenIntSeq>(arith_seq(1, 1));
    CHECK_THROWS_AS(borel2_phi(XiPoint(std::vector<std::uint64_t>{}), finite, 10), PreconditionError);
}

TEST_CASE("two-block source: image values and equivalence of nearby points") {
    // 65 entries at level 1 (block mass 65/4 > 16), then a constant far level
    std::vector<GenInt> prefix(65, GenInt::of(1));
    auto alpha =
        std::make_shared<const GenIntSeq>(const_tail_seq(std::move(prefix), GenInt::of(68)));

    GenIntSeq img_b = borel2_phi(XiPoint({0, 1}), alpha, 100);
    GenIntSeq img_c = borel2_phi(XiPoint({0, 0}), alpha, 100);
    for (std::uint64_t j = 1; j <= 65; ++j) {
        CHECK(img_b.at(j) == GenInt::of(1));
        CHECK(img_c.at(j) == GenInt::of(1));
    }
    for (std::uint64_t j = 66; j <= 100; ++j) {
        CHECK(img_b.at(j) == GenInt::of(69));
        CHECK(img_c.at(j) == GenInt::of(68));
    }

    EquivVerdict v = star_equiv(img_b, img_c, 10000, 8);
    CHECK(v.kind == VerdictKind::Equivalent);
    CHECK(v.K == 1);
    CHECK(v.witness_set.empty());
}

TEST_CASE("separating grid points") {
    XiPoint zero = b_epsilon({false, false});
    for (std::uint64_t i = 1; i <= 20; ++i) CHECK(zero.at(i) == 0);

    XiPoint cap = b_epsilon({true});
    for (std::uint64_t i = 1; i <= 20; ++i) CHECK(cap.at(i) == i - 1);

    XiPoint mixed = b_epsilon({true, false});
    CHECK(mixed.at(1) == 0);
    CHECK(mixed.at(2) == 0);
    CHECK(mixed.at(3) == 2);
    CHECK(mixed.at(4) == 0);
    CHECK(mixed.at(5) == 4);

    CHECK_THROWS_AS(b_epsilon({}), InvalidInputError);
}

TEST_CASE("discrepancy between grid points") {
    XiPoint a = b_epsilon({true, false});
    XiPoint b = b_epsilon({false, false});
    CHECK(eks_discrepancy(a, a, 100) == 0);
    CHECK(eks_discrepancy(a, b, 9) == 8);
    CHECK(eks_discrepancy(a, b, 10) == 8);
    auto sup = xi_sup_diff(a, b);
    CHECK(!sup.has_value());  // the gap grows without bound
    CHECK(xi_sup_diff(a, a).value() == 0);
}
