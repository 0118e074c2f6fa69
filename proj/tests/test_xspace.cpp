#include <cmath>
#include <map>

#include "doctest.h"
#include "oplab/xspace.hpp"

using namespace oplab;

namespace {

ComplexMatrix unit_entry(int n, int r, int c) {
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    m(r, c) = 1.0;
    return m;
}

WeightSequence const_weights(std::uint64_t depth, double w) {
    return WeightSequence::from_prefix(std::vector<double>(depth, w));
}

}  // namespace

TEST_CASE("scalar element at a single weighted vector") {
    WeightSequence alpha = WeightSequence::from_prefix({0.5});
    MatElement x;
    x.n = 1;
    x.e_coeffs.emplace_back(1, unit_entry(1, 0, 0));
    // row part 1 beats the weighted column part 0.25
    CHECK(xd_norm(alpha, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concrete_rep_norm(alpha, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("column-patterned element has norm sqrt(max(1, k w^2))") {
    const int k = 5;
    const double w = 0.7;
    WeightSequence alpha = const_weights(k, w);
    MatElement x;
    x.n = k;
    for (int i = 0; i < k; ++i) x.e_coeffs.emplace_back(i + 1, unit_entry(k, i, 0));
    double expect = std::sqrt(std::max(1.0, k * w * w));
    CHECK(xd_norm(alpha, x) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(concrete_rep_norm(alpha, x) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("two-coefficient hand case") {
    WeightSequence alpha = WeightSequence::from_prefix({1.0, 0.5});
    MatElement x;
    x.n = 2;
    x.e_coeffs.emplace_back(1, unit_entry(2, 0, 0));
    x.e_coeffs.emplace_back(2, unit_entry(2, 1, 0));
    // row gram = identity, column gram = 1.25 E11
    CHECK(xd_norm(alpha, x) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
    CHECK(concrete_rep_norm(alpha, x) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
}

TEST_CASE("zero element and single unweighted coefficient") {
    WeightSequence alpha = const_weights(4, 0.3);
    MatElement z;
    z.n = 2;
    CHECK(xd_norm(alpha, z) == 0.0);
    CHECK(concrete_rep_norm(alpha, z) == 0.0);

    MatElement f;
    f.n = 1;
    f.f_coeffs.emplace_back(3, unit_entry(1, 0, 0));
    CHECK(xd_norm(alpha, f) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the two norm routes agree on random elements") {
    WeightSequence alpha = WeightSequence::from_prefix(
        {1.0, 0.9, 0.7, 0.55, 0.4, 0.33, 0.2, 0.11, 0.05, 0.01});
    for (std::uint64_t s = 1; s <= 25; ++s) {
        MatElement x = random_element(3, 5, 10, s);
        double a = xd_norm(alpha, x), b = concrete_rep_norm(alpha, x);
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("split bounds: trivial partition and one-block support") {
    WeightSequence alpha = const_weights(6, 0.6);
    MatElement x = random_element(2, 4, 6, 42);

    SpacePartition whole{{{1, 2, 3, 4, 5, 6}}};
    SplitBounds sb = split_bounds(alpha, x, whole);
    CHECK(sb.lower == doctest::Approx(sb.whole).epsilon(1e-12));
    CHECK(sb.upper == doctest::Approx(sb.whole).epsilon(1e-12));

    // element supported inside one block of a finer partition
    MatElement y;
    y.n = 2;
    y.e_coeffs.emplace_back(1, unit_entry(2, 0, 0));
    y.e_coeffs.emplace_back(2, unit_entry(2, 1, 1));
    SpacePartition part{{{1, 2}, {3, 4}, {5, 6}}};
    SplitBounds sy = split_bounds(alpha, y, part);
    CHECK(sy.lower == doctest::Approx(sy.whole).epsilon(1e-12));
}

TEST_CASE("split bounds sandwich random elements") {
    WeightSequence alpha = const_weights(8, 0.8);
    SpacePartition part{{{1, 4, 7}, {2, 5, 8}, {3, 6}}};
    for (std::uint64_t s = 1; s <= 15; ++s) {
        MatElement x = random_element(3, 6, 8, 100 + s);
        SplitBounds sb = split_bounds(alpha, x, part);
        CHECK(sb.lower <= sb.whole + 1e-10);
        CHECK(sb.whole <= sb.upper + 1e-10);
    }
}

TEST_CASE("split bounds reject bad partitions") {
    WeightSequence alpha = const_weights(4, 0.5);
    MatElement x;
    x.n = 1;
    x.e_coeffs.emplace_back(3, unit_entry(1, 0, 0));
    SpacePartition overlap{{{1, 2}, {2, 3}}};
    CHECK_THROWS_AS(split_bounds(alpha, x, overlap), InvalidInputError);
    SpacePartition missing{{{1, 2}}};
    CHECK_THROWS_AS(split_bounds(alpha, x, missing), PreconditionError);
}

TEST_CASE("scaling the weights moves the norm by at most the scale") {
    WeightSequence alpha = const_weights(16, 0.9);
    CHECK(scale_check(alpha, 1.0, 20, 5) == doctest::Approx(1.0).epsilon(1e-12));
    double r = scale_check(alpha, 0.5, 20, 5);
    CHECK(r >= 1.0 - 1e-12);
    CHECK(r <= 2.0 + 1e-12);
}

TEST_CASE("block-diagonal direct sums take the max of the norms") {
    WeightSequence alpha = WeightSequence::from_prefix({0.95, 0.8, 0.6, 0.45, 0.3, 0.15});
    for (std::uint64_t s = 1; s <= 10; ++s) {
        MatElement x = random_element(2, 4, 6, 300 + s);
        MatElement y = random_element(3, 4, 6, 600 + s);
        MatElement z;
        z.n = x.n + y.n;
        auto embed = [&](const std::vector<std::pair<std::uint64_t, ComplexMatrix>>& xs,
                         const std::vector<std::pair<std::uint64_t, ComplexMatrix>>& ys,
                         std::vector<std::pair<std::uint64_t, ComplexMatrix>>& out) {
            std::map<std::uint64_t, ComplexMatrix> acc;
            for (const auto& [i, m] : xs) {
                ComplexMatrix big = ComplexMatrix::Zero(z.n, z.n);
                big.topLeftCorner(x.n, x.n) = m;
                acc.emplace(i, big).first->second.topLeftCorner(x.n, x.n) = m;
            }
            for (const auto& [i, m] : ys) {
                auto it = acc.emplace(i, ComplexMatrix::Zero(z.n, z.n)).first;
                it->second.bottomRightCorner(y.n, y.n) = m;
            }
            for (auto& [i, m] : acc) out.emplace_back(i, m);
        };
        embed(x.e_coeffs, y.e_coeffs, z.e_coeffs);
        embed(x.f_coeffs, y.f_coeffs, z.f_coeffs);
        double expect = std::max(xd_norm(alpha, x), xd_norm(alpha, y));
        CHECK(xd_norm(alpha, z) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("unit phases on the coefficients leave the norm unchanged") {
    WeightSequence alpha = const_weights(6, 0.7);
    MatElement x = random_element(3, 5, 6, 77);
    MatElement y = x;
    std::complex<double> phase(std::cos(0.9), std::sin(0.9));
    for (auto& [i, m] : y.e_coeffs) m *= phase;
    for (auto& [i, m] : y.f_coeffs) m *= phase;
    CHECK(xd_norm(alpha, x) == doctest::Approx(xd_norm(alpha, y)).epsilon(1e-10));
}

TEST_CASE("larger weights never shrink an e-only element") {
    WeightSequence lo = const_weights(6, 0.4);
    WeightSequence hi = const_weights(6, 0.9);
    for (std::uint64_t s = 1; s <= 10; ++s) {
        MatElement x = random_element(3, 5, 6, 900 + s, /*with_f=*/false);
        CHECK(xd_norm(lo, x) <= xd_norm(hi, x) + 1e-10);
    }
}
