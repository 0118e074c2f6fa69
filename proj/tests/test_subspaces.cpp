#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oplab/subspaces.hpp"

using namespace oplab;

namespace {

ComplexMatrix coordinate_columns(std::uint64_t N, const std::vector<int>& idx) {
    ComplexMatrix m = ComplexMatrix::Zero(2 * static_cast<Eigen::Index>(N),
                                          static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) m(idx[c], static_cast<Eigen::Index>(c)) = 1.0;
    return m;
}

ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> g;
    ComplexMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
    return m;
}

}  // namespace

TEST_CASE("restricted spectrum of coordinate subspaces") {
    WeightSequence amb = WeightSequence::from_prefix({0.9, 0.6, 0.3});
    SubspaceFrame Y(amb, 3, coordinate_columns(3, {0, 2}));
    SingularSpectrum s = restricted_spectrum(Y);
    REQUIRE(s.size() == 2);
    CHECK(s.at(1) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(s.at(2) == doctest::Approx(0.3).epsilon(1e-12));

    // the unweighted coordinates lie in the kernel of the ambient operator
    SubspaceFrame F(amb, 3, coordinate_columns(3, {3, 4}));
    SingularSpectrum z = restricted_spectrum(F);
    for (std::size_t k = 1; k <= z.size(); ++k) CHECK(z.at(k) <= 1e-12);
}

TEST_CASE("restricted spectrum interlaces below the ambient weights") {
    WeightSequence amb = WeightSequence::from_prefix({1.0, 0.8, 0.5, 0.25});
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        SubspaceFrame Y(amb, 4, random_complex(rng, 8, 3));
        SingularSpectrum s = restricted_spectrum(Y);
        std::vector<double> w = {1.0, 0.8, 0.5, 0.25};
        for (std::size_t k = 1; k <= s.size(); ++k) {
            CHECK(s.at(k) <= w[k - 1] + 1e-10);
            if (k > 1) CHECK(s.at(k) <= s.at(k - 1) + 1e-12);
        }
    }
}

TEST_CASE("nested-chain minimax agrees with the closed form") {
    WeightSequence amb = WeightSequence::from_prefix({0.9, 0.6, 0.3});
    SubspaceFrame Y(amb, 3, coordinate_columns(3, {0, 1, 2}));

    WielandtResult one = wielandt_check(Y, {1}, 50, 7);
    CHECK(one.closed_form == doctest::Approx(0.81).epsilon(1e-12));
    CHECK(std::abs(one.best_oracle - one.closed_form) <= 1e-9);

    WielandtResult two = wielandt_check(Y, {1, 3}, 50, 7);
    CHECK(two.closed_form == doctest::Approx(0.81 + 0.09).epsilon(1e-12));
    CHECK(std::abs(two.best_oracle - two.closed_form) <= 1e-9);

    CHECK_THROWS_AS(wielandt_check(Y, {}, 10, 7), InvalidInputError);
    CHECK_THROWS_AS(wielandt_check(Y, {2, 2}, 10, 7), InvalidInputError);
    CHECK_THROWS_AS(wielandt_check(Y, {1, 4}, 10, 7), RangeError);
}

TEST_CASE("minimax identity on random subspaces") {
    WeightSequence amb = WeightSequence::from_prefix({1.0, 0.85, 0.6, 0.35, 0.1});
    std::mt19937_64 rng(31);
    for (int t = 0; t < 5; ++t) {
        SubspaceFrame Y(amb, 5, random_complex(rng, 10, 4));
        WielandtResult r = wielandt_check(Y, {1, 3}, 200, 100 + t);
        CHECK(std::abs(r.best_oracle - r.closed_form) <= 1e-7);
    }
}

TEST_CASE("canonical basis of a coordinate subspace") {
    WeightSequence amb = WeightSequence::from_prefix({0.9, 0.6, 0.3});
    SubspaceFrame Y(amb, 3, coordinate_columns(3, {0, 2}));
    CanonicalBasis cb = canonical_basis(Y);
    REQUIRE(cb.beta.prefix().size() == 2);
    CHECK(cb.beta.at(1) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(cb.beta.at(2) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(cb.exact_average);
    CHECK(cb.averaging_residual <= 1e-12);
    CHECK(op_norm(cb.T - ComplexMatrix::Identity(2, 2)) <= 1e-12);
}

TEST_CASE("canonical basis of a rotated line") {
    const double theta = 0.7;
    WeightSequence amb = WeightSequence::from_prefix({1.0, 0.0});
    ComplexMatrix raw = ComplexMatrix::Zero(4, 1);
    raw(0, 0) = std::cos(theta);
    raw(1, 0) = std::sin(theta);
    SubspaceFrame Y(amb, 2, raw);
    CanonicalBasis cb = canonical_basis(Y);
    CHECK(cb.beta.at(1) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    CHECK(cb.exact_average);
    CHECK(cb.averaging_residual <= 1e-12);
}

TEST_CASE("averaging residual vanishes on random small frames") {
    std::mt19937_64 rng(41);
    WeightSequence amb = WeightSequence::from_prefix({0.95, 0.7, 0.5, 0.2});
    for (int t = 0; t < 8; ++t) {
        SubspaceFrame Y(amb, 4, random_complex(rng, 8, 1 + t % 4));
        CanonicalBasis cb = canonical_basis(Y);
        CHECK(cb.exact_average);
        CHECK(cb.averaging_residual <= 1e-12);
        for (double b : cb.beta.prefix()) CHECK(b <= 1.0);
    }
}

TEST_CASE("subbasis schedule cutpoints and weights") {
    SubbasisSchedule sched;  // a = 1.5
    CHECK(sched.cutpoint(0) == 1);
    CHECK(sched.cutpoint(1) == 3);
    CHECK(sched.cutpoint(2) == 7);
    CHECK(sched.cutpoint(3) == 16);
    CHECK(sched.level_weight(0) == doctest::Approx(1.0));
    CHECK(sched.level_weight(2) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    WeightSequence w = sched.weights();
    for (std::uint64_t i = 1; i <= 31; i += 2) CHECK(w.at(i) == 0.0);
    CHECK(w.at(2) == doctest::Approx(1.0));          // j=1 in [N_0, N_1)
    CHECK(w.at(6) == doctest::Approx(1.0 / 1.5));    // j=3 in [N_1, N_2)
    CHECK(w.at(14) == doctest::Approx(4.0 / 9.0));   // j=7 in [N_2, N_3)
}

TEST_CASE("subbasis embedding of a kernel frame") {
    WeightSequence amb = WeightSequence::from_prefix({0.9, 0.5});
    SubspaceFrame F(amb, 2, coordinate_columns(2, {2, 3}));
    SubbasisEmbedding e = subbasis_embed(SubbasisSchedule{}, F);
    REQUIRE(e.pi.size() == 2);
    CHECK(e.pi[0] == 1);
    CHECK(e.pi[1] == 3);
    CHECK(e.distortion == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("subbasis embedding places an exact boundary value down a block") {
    WeightSequence amb = WeightSequence::from_prefix({2.0 / 3.0});
    SubspaceFrame Y(amb, 1, coordinate_columns(1, {0}));
    SubbasisEmbedding e = subbasis_embed(SubbasisSchedule{}, Y);
    REQUIRE(e.pi.size() == 1);
    // 2/3 = a^{-1} lands in level 1: target slot 2 * N_2 = 14
    CHECK(e.pi[0] == 14);
    CHECK(e.distortion <= 1.5 + 1e-12);
}

TEST_CASE("subbasis embedding of random frames stays within the schedule ratio") {
    std::mt19937_64 rng(51);
    std::vector<double> w;
    for (int i = 0; i < 6; ++i) w.push_back(std::pow(0.8, i));
    WeightSequence amb = WeightSequence::from_prefix(w);
    for (int t = 0; t < 8; ++t) {
        SubspaceFrame Y(amb, 6, random_complex(rng, 12, 4));
        SubbasisEmbedding e = subbasis_embed(SubbasisSchedule{}, Y);
        CHECK(e.distortion <= 1.5 + 1e-8);
        std::vector<std::uint64_t> pi = e.pi;
        std::sort(pi.begin(), pi.end());
        CHECK(std::adjacent_find(pi.begin(), pi.end()) == pi.end());
    }
}

TEST_CASE("noncomplemented bound: harmonic closed form with certified divergence") {
    Tail p;
    p.kind = TailKind::Power;
    p.coeff = 1.0;
    p.power = 0.25;
    WeightSequence alpha({}, p), beta({}, p);
    NoncomplementedBound nb = noncomplemented_bound(alpha, beta, 0, 100);
    double h = 0.0;
    for (int i = 1; i <= 100; ++i) h += 1.0 / i;
    CHECK(nb.bound == doctest::Approx(std::sqrt(h) / 2.0).epsilon(1e-12));
    CHECK(nb.divergence_certified);

    NoncomplementedBound wider = noncomplemented_bound(alpha, beta, 0, 200);
    CHECK(wider.bound >= nb.bound);
}

TEST_CASE("noncomplemented bound: constant side and uncertified tails") {
    Tail ones;
    ones.kind = TailKind::Power;
    ones.coeff = 1.0;
    ones.power = 0.0;
    Tail slow;
    slow.kind = TailKind::Power;
    slow.coeff = 1.0;
    slow.power = 0.1;
    WeightSequence alpha({}, slow), beta({}, ones);
    NoncomplementedBound nb = noncomplemented_bound(alpha, beta, 0, 50);
    double s = 0.0;
    for (int i = 1; i <= 50; ++i) s += std::pow(i, -0.2);
    CHECK(nb.bound == doctest::Approx(std::sqrt(s) / 2.0).epsilon(1e-12));
    CHECK(nb.divergence_certified);

    // a finite-support alpha cannot certify divergence
    Tail fin;
    fin.kind = TailKind::Blocks;
    fin.blocks = {{10, 0.5}};
    NoncomplementedBound no = noncomplemented_bound(WeightSequence({}, fin), beta, 0, 5);
    CHECK(!no.divergence_certified);

    CHECK_THROWS_AS(noncomplemented_bound(alpha, beta, 0, 0), InvalidInputError);
    WeightSequence rising = WeightSequence::from_prefix({0.5, 0.9});
    CHECK_THROWS_AS(noncomplemented_bound(alpha, rising, 0, 2), PreconditionError);
}

TEST_CASE("relabeling distortion closed forms") {
    for (std::uint64_t n = 1; n <= 4; ++n) {
        double inside = subsequence_distortion(n, SubsequenceCase::Inside);
        double outside = subsequence_distortion(n, SubsequenceCase::Outside);
        CHECK(inside == doctest::Approx(std::exp2(n / 2.0)).epsilon(1e-12));
        CHECK(outside == doctest::Approx(std::exp2((n + 1) / 2.0)).epsilon(1e-12));
        CHECK(outside >= inside);
    }
    CHECK_THROWS_AS(subsequence_distortion(0, SubsequenceCase::Inside), InvalidInputError);
    CHECK_THROWS_AS(subsequence_distortion(5, SubsequenceCase::Inside), OverflowError);
}
