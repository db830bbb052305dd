#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nctheta/mirror.hpp"
#include "nctheta/presets.hpp"
#include "nctheta/verify.hpp"

using namespace nct;

namespace {

RVec rvec1(double x) {
    RVec v(1);
    v << x;
    return v;
}

}  // namespace

TEST_CASE("symplectic pairing is skew and matches the matrix form") {
    SymplecticForm omega{2};
    RMat m = omega.mat();
    CHECK((m + m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    RVec v(4), w(4);
    v << 1.0, -2.0, 0.5, 3.0;
    w << 0.25, 1.0, -1.0, 2.0;
    CHECK(omega.pair(v, w) == doctest::Approx(v.dot(m * w)).epsilon(1e-14));
    CHECK(omega.pair(v, w) == doctest::Approx(-omega.pair(w, v)).epsilon(1e-14));
    CHECK(omega.pair(v, v) == doctest::Approx(0.0));
}

TEST_CASE("intersection of affine graphs") {
    AffineLagrangian la(IntSymMatrix::scalar(0), rvec1(0.0));
    AffineLagrangian lb(IntSymMatrix::scalar(1), rvec1(1.0));
    RVec p = intersection_point(la, lb);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.0));
    // The point lies on both graphs: yhat = A x + c.
    CHECK(p[1] == doctest::Approx(0.0 * p[0] + 0.0));
    CHECK(p[1] == doctest::Approx(1.0 * p[0] + 1.0));

    CHECK_THROWS_AS(intersection_point(la, AffineLagrangian(IntSymMatrix::scalar(0), rvec1(2.0))),
                    parallel_lagrangians);
}

TEST_CASE("triangle area of the first nontrivial crossing") {
    auto l = presets::line_triple();
    AffineLagrangian la(l[0], rvec1(0.0));
    AffineLagrangian lb(l[1], rvec1(1.0));
    AffineLagrangian lc(l[2], rvec1(0.0));
    SymplecticForm omega{1};
    RVec v_ab = intersection_point(la, lb);
    RVec v_bc = intersection_point(lb, lc);
    RVec v_ac = intersection_point(la, lc);
    CHECK(triangle_area(v_ab, v_bc, v_ac, omega) == doctest::Approx(1.5).epsilon(1e-13));
    // A degenerate triangle (repeated vertex) has zero area.
    CHECK(triangle_area(v_ac, v_ac, v_ac, omega) == doctest::Approx(0.0));
}

TEST_CASE("area-weighted constants reproduce the closed forms") {
    auto l = presets::line_triple();
    auto mu = coset_representatives(l[1] - l[0]);
    auto nu = coset_representatives(l[2] - l[1]);
    auto rho = coset_representatives(l[2] - l[0]);
    double c000 = c_mirror(l[0], l[1], l[2], mu[0], nu[0], rho[0]);
    CHECK(c000 == doctest::Approx(1.0 + 2.0 * std::exp(-6.0 * M_PI)).epsilon(1e-13));
    double c010 = c_mirror(l[0], l[1], l[2], mu[0], nu[1], rho[0]);
    CHECK(c010 == doctest::Approx(2.0 * std::exp(-1.5 * M_PI)).epsilon(1e-12));
    CHECK_THROWS_AS(c_mirror(l[0], l[1], l[2], mu[0], nu[0], CosetIndex(l[2] - l[1], rho[0].rep())),
                    index_modulus_mismatch);
}

TEST_CASE("geometric and analytic structure constants agree entrywise") {
    auto l = presets::line_triple();
    Report line = verify_mirror_equality(l[0], l[1], l[2], 1e-10);
    CHECK(line.pass);
    CHECK(line.checks == 1 * 2 * 3);
    Report plane = verify_mirror_equality(presets::sec5_a1(), presets::sec5_a2(),
                                          presets::sec5_a3(), 1e-10);
    CHECK(plane.pass);
    CHECK(plane.checks == 2 * 2 * 9);
}
