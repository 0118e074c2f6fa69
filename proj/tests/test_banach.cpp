#include <cmath>
#include <random>

#include "doctest.h"
#include "oplab/banach.hpp"

using namespace oplab;

namespace {

RealMatrix random_real(std::mt19937_64& rng, int r, int c) {
    std::normal_distribution<double> g;
    RealMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = g(rng);
    return m;
}

// grid-refined sampling of max |y_0| / ||y||_1 over a two-column frame
double sampled_c(const BanachFrame& Y) {
    REQUIRE(Y.basis.cols() == 2);
    auto value = [&](double theta) {
        Eigen::VectorXd z(2);
        z << std::cos(theta), std::sin(theta);
        Eigen::VectorXd y = Y.basis * z;
        double xi = y.tail(Y.d).norm();
        double denom = std::abs(y(0)) + xi;
        return denom > 0.0 ? std::abs(y(0)) / denom : 0.0;
    };
    double best = 0.0, best_t = 0.0, span = M_PI;
    const int grid = 720;
    for (int level = 0; level < 6; ++level) {
        double lo = best_t - span, step = 2.0 * span / grid;
        for (int i = 0; i <= grid; ++i) {
            double v = value(lo + i * step);
            if (v > best) {
                best = v;
                best_t = lo + i * step;
            }
        }
        span = 2.0 * step;
    }
    return best;
}

}  // namespace

TEST_CASE("phi is the correct strictly increasing profile") {
    CHECK(phi_fn(0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(phi_fn(1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(phi_fn(0.5) == doctest::Approx(0.5 + std::sqrt(1.25)).epsilon(1e-15));
    for (int i = 0; i < 100; ++i)
        CHECK(phi_fn(i / 100.0) < phi_fn((i + 1) / 100.0));
    CHECK_THROWS_AS(phi_fn(-0.1), RangeError);
    CHECK_THROWS_AS(phi_fn(1.1), RangeError);
}

TEST_CASE("the model family realizes every invariant value") {
    for (int i = 0; i <= 20; ++i) {
        double t = i / 20.0;
        CInvariant ci = c_invariant(make_Phi(t, 12));
        CHECK(ci.c == doctest::Approx(t).epsilon(1e-12));
        // the maximizer is a unit vector in the 1-norm
        double xi2 = 0.0;
        for (std::size_t k = 1; k < ci.maximizer.size(); ++k)
            xi2 += ci.maximizer[k] * ci.maximizer[k];
        CHECK(std::abs(ci.maximizer[0]) + std::sqrt(xi2) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(make_Phi(1.5, 8), RangeError);
    CHECK_THROWS_AS(make_Phi(0.5, 1), InvalidInputError);
}

TEST_CASE("a block inside the l2 part has invariant 0") {
    RealMatrix b = RealMatrix::Zero(4, 2);
    b(1, 0) = 1.0;
    b(2, 1) = 1.0;
    BanachFrame Y(3, b);
    CInvariant ci = c_invariant(Y);
    CHECK(ci.c == 0.0);
    CHECK(ci.maximizer[0] == 0.0);
}

TEST_CASE("invariant matches a dense sampling oracle on random planes") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 8; ++t) {
        BanachFrame Y(3, random_real(rng, 4, 2));
        double c = c_invariant(Y).c;
        double s = sampled_c(Y);
        CHECK(s <= c + 1e-9);
        CHECK(std::abs(c - s) <= 1e-6);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
    }
}

TEST_CASE("adding columns never shrinks the invariant") {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 8; ++t) {
        RealMatrix b = random_real(rng, 6, 3);
        BanachFrame small(5, b.leftCols(2));
        BanachFrame large(5, b);
        CHECK(c_invariant(small).c <= c_invariant(large).c + 1e-10);
    }
}

TEST_CASE("weak sup over the canonical block equals phi of the invariant") {
    for (double t : {0.0, 0.5, 1.0}) {
        WeakSupCheck w = weak_sup_check(make_Phi(t, 6));
        CHECK(w.phi_c == doctest::Approx(phi_fn(t)).epsilon(1e-12));
        CHECK(w.sup_norm == doctest::Approx(w.phi_c).epsilon(1e-9));
    }
    RealMatrix b = RealMatrix::Zero(5, 2);
    b(1, 0) = 1.0;
    b(3, 1) = 1.0;
    WeakSupCheck w = weak_sup_check(BanachFrame(4, b));
    CHECK(w.sup_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("the invariant decides isometry") {
    CHECK(isometric(make_Phi(0.3, 50), make_Phi(0.3, 8)));
    CHECK(!isometric(make_Phi(0.3, 12), make_Phi(0.4, 12)));

    // two differently rotated copies of a plane inside l2 are isometric
    RealMatrix b1 = RealMatrix::Zero(4, 2);
    b1(1, 0) = 1.0;
    b1(2, 1) = 1.0;
    RealMatrix b2 = RealMatrix::Zero(4, 2);
    b2(1, 0) = std::cos(0.4);
    b2(2, 0) = std::sin(0.4);
    b2(3, 1) = 1.0;
    CHECK(isometric(BanachFrame(3, b1), BanachFrame(3, b2)));
    CHECK_THROWS_AS(isometric(make_Phi(0.3, 8), make_Phi(0.3, 8), -1.0), InvalidInputError);
}

TEST_CASE("membership in the open slab") {
    CHECK(ut_member({0.8, 0.1}, 0.5));
    CHECK(!ut_member({0.4, 0.1}, 0.5));       // scalar part too small
    CHECK(!ut_member({0.9, 0.5, 0.8}, 0.5));  // l2 part too large
    CHECK(ut_member({-0.95}, 0.9));
    CHECK_THROWS_AS(ut_member({}, 0.5), InvalidInputError);
    CHECK_THROWS_AS(ut_member({0.5}, 2.0), RangeError);
}

TEST_CASE("frame validation") {
    CHECK_THROWS_AS(BanachFrame(0, RealMatrix::Identity(1, 1)), InvalidInputError);
    CHECK_THROWS_AS(BanachFrame(3, RealMatrix::Identity(2, 2)), InvalidInputError);
    RealMatrix dep(3, 2);
    dep << 1, 2, 0, 0, 0, 0;
    CHECK_THROWS_AS(BanachFrame(2, dep), PreconditionError);
}
