#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nctheta/presets.hpp"
#include "nctheta/theta.hpp"

using namespace nct;

namespace {

CVec cvec1(cplx z) {
    CVec v(1);
    v << z;
    return v;
}

cplx brute_e_comm(const IntSymMatrix& a_ab, const CosetIndex& mu, const CVec& z, int radius) {
    RVec center = rat_to_double(a_ab.solve_rational(mu.rep()));
    CMat q = a_ab.to_complex();
    KahanSum acc;
    for_each_in_box(IVec::Zero(a_ab.n()), radius, [&](const IVec& w) {
        CVec v = z + w.cast<double>().cast<cplx>() - center.cast<cplx>();
        acc.add(std::exp(-M_PI * (v.transpose() * (q * v)).value()));
    });
    return acc.value();
}

}  // namespace

TEST_CASE("theta constant at the square lattice") {
    CMat omega(1, 1);
    omega << cplx{0.0, 1.0};
    ThetaValue v = theta_with_char(ThetaCharacteristics::zero(1), SiegelPoint(omega),
                                   CVec::Zero(1), 1e-14);
    CHECK(v.value.real() == doctest::Approx(1.0864348112133080).epsilon(1e-13));
    CHECK(std::abs(v.value.imag()) < 1e-14);

    CMat omega2 = cplx(0.0, 1.0) * CMat::Identity(2, 2);
    ThetaValue v2 = theta_with_char(ThetaCharacteristics::zero(2), SiegelPoint(omega2),
                                    CVec::Zero(2), 1e-14);
    CHECK(v2.value.real() ==
          doctest::Approx(1.0864348112133080 * 1.0864348112133080).epsilon(1e-12));
}

TEST_CASE("theta transformation under lattice shifts of the argument") {
    std::mt19937_64 rng(7);
    auto unif = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    const int n = 2;
    CMat omega(n, n);
    omega << cplx(0.3, 1.1), cplx(-0.2, 0.4), cplx(-0.2, 0.4), cplx(0.1, 0.9);
    SiegelPoint om(omega);
    ThetaCharacteristics ch(RVec((RVec(n) << 0.25, 0.5).finished()),
                            RVec((RVec(n) << 0.0, 1.0 / 3.0).finished()));
    for (int trial = 0; trial < 5; ++trial) {
        CVec z(n);
        for (int i = 0; i < n; ++i) z[i] = cplx(unif(), 0.4 * unif());
        IVec p(n);
        p << 1, -2;
        CVec pc = p.cast<double>().cast<cplx>();
        cplx base = theta_with_char(ch, om, z, 1e-13).value;

        // z -> z + p multiplies by exp(2 pi i c1 . p).
        cplx shifted = theta_with_char(ch, om, CVec(z + pc), 1e-13).value;
        cplx factor = std::exp(cplx(0.0, 2.0 * M_PI) * ch.c1.cast<cplx>().dot(pc));
        CHECK(std::abs(shifted - factor * base) <= 1e-10 * std::abs(base));

        // z -> z + Omega p multiplies by exp(-pi i p Omega p - 2 pi i p.(z + c2)).
        CVec zp = z + omega * pc;
        cplx quasi = theta_with_char(ch, om, zp, 1e-13).value;
        cplx e = (pc.transpose() * (omega * pc)).value();
        cplx lin = (pc.transpose() * CVec(z + ch.c2.cast<cplx>())).value();
        cplx f2 = std::exp(cplx(0.0, -M_PI) * e + cplx(0.0, -2.0 * M_PI) * lin);
        CHECK(std::abs(quasi - f2 * base) <= 1e-9 * std::max(std::abs(base), std::abs(quasi)));
    }
}

TEST_CASE("periodized Gaussian: brute-force equality, periodicity, coset invariance") {
    std::mt19937_64 rng(19);
    auto unif = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    IntSymMatrix a_a = IntSymMatrix::diag({1, -4});
    IntSymMatrix a_b = IntSymMatrix::diag({2, -2});
    IntSymMatrix a_ab = a_b - a_a;
    auto reps = coset_representatives(a_ab);
    for (const auto& mu : reps) {
        for (int trial = 0; trial < 5; ++trial) {
            CVec z(2);
            for (int i = 0; i < 2; ++i) z[i] = cplx(unif(), 0.8 * unif());
            cplx lib = e_comm(a_a, a_b, mu, z, 1e-13).value;
            cplx brute = brute_e_comm(a_ab, mu, z, 20);
            CHECK(std::abs(lib - brute) <= 1e-12 * std::max(1.0, std::abs(brute)));

            CVec z1 = z;
            z1[0] += 1.0;
            CHECK(std::abs(e_comm(a_a, a_b, mu, z1, 1e-13).value - lib) <=
                  1e-12 * std::max(1.0, std::abs(lib)));

            IVec k(2);
            k << 2, -1;
            CosetIndex shifted = reduce_mod(a_ab, IVec(mu.rep() + IVec(a_ab.mat() * k)));
            CHECK(std::abs(e_comm(a_a, a_b, shifted, z, 1e-13).value - lib) <=
                  1e-12 * std::max(1.0, std::abs(lib)));
        }
    }
    CHECK_THROWS_AS(e_comm(a_b, a_a, reps[0], CVec::Zero(2), 1e-12), not_positive_definite);
}

TEST_CASE("deformation matrix for the determinant -4 pair") {
    IntSymMatrix a1 = presets::sec5_a1(), a2 = presets::sec5_a2();
    ComplexSymMatrix m = compute_M(a1, a2, SkewMatrix::theta12(0.3));
    // (1 + (i/2)(A_1 + A_2) theta)^{-1} (A_2 - A_1)
    //   = (1 / 1.405) [[1, -0.9 i], [-0.9 i, 2]]
    CMat expect(2, 2);
    expect << cplx(1.0, 0.0), cplx(0.0, -0.9), cplx(0.0, -0.9), cplx(2.0, 0.0);
    expect /= 1.405;
    CHECK((m.mat() - expect).cwiseAbs().maxCoeff() < 1e-14);

    // theta = 0 reduces to the plain difference.
    ComplexSymMatrix m0 = compute_M(a1, a2, SkewMatrix(RMat::Zero(2, 2)));
    CHECK((m0.mat() - (a2 - a1).to_complex()).cwiseAbs().maxCoeff() < 1e-15);

    // Incompatible pair: A_a theta A_a != A_b theta A_b makes M asymmetric.
    CHECK_THROWS_AS(
        compute_M(IntSymMatrix::diag({1, 1}), IntSymMatrix::diag({2, 3}), SkewMatrix::theta12(0.3)),
        not_compatible);
}

TEST_CASE("branch-tracked determinant powers") {
    CHECK(std::abs(det_power_continuous(CMat::Zero(2, 2), 0.25) - cplx{1.0, 0.0}) < 1e-15);
    CMat x(2, 2);
    x << cplx(0.0, 0.0), cplx(0.9, 0.0), cplx(-0.9, 0.0), cplx(0.0, 0.0);
    cplx half = det_power_continuous(x, 0.5);
    cplx full = (CMat::Identity(2, 2) + cplx(0.0, 1.0) * x).determinant();
    CHECK(std::abs(half * half - full) < 1e-12);
    CHECK(std::abs(normalization_C(presets::sec5_a1(), presets::sec5_a2(),
                                   SkewMatrix(RMat::Zero(2, 2))) -
                   cplx{1.0, 0.0}) < 1e-14);
}

TEST_CASE("deformed basis function: theta -> 0 limit and brute-force equality") {
    std::mt19937_64 rng(31);
    auto unif = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    IntSymMatrix a1 = presets::sec5_a1(), a2 = presets::sec5_a2();
    IntSymMatrix a_ab = a2 - a1;
    SkewMatrix zero(RMat::Zero(2, 2));
    SkewMatrix theta = SkewMatrix::theta12(0.3);
    ComplexSymMatrix m = compute_M(a1, a2, theta);
    cplx c_ab = normalization_C(a1, a2, theta);
    for (const auto& mu : coset_representatives(a_ab)) {
        RVec center = rat_to_double(a_ab.solve_rational(mu.rep()));
        for (int trial = 0; trial < 5; ++trial) {
            CVec z(2);
            for (int i = 0; i < 2; ++i) z[i] = cplx(unif(), 0.8 * unif());
            cplx undeformed = e_nc(a1, a2, mu, z, zero, 1e-13).value;
            cplx comm = e_comm(a1, a2, mu, z, 1e-13).value;
            CHECK(std::abs(undeformed - comm) <= 1e-12 * std::max(1.0, std::abs(comm)));

            cplx deformed = e_nc(a1, a2, mu, z, theta, 1e-13).value;
            KahanSum brute;
            for_each_in_box(IVec::Zero(2), 15, [&](const IVec& w) {
                CVec v = z + w.cast<double>().cast<cplx>() - center.cast<cplx>();
                brute.add(std::exp(-M_PI * (v.transpose() * (m.mat() * v)).value()));
            });
            cplx expect = c_ab * brute.value();
            CHECK(std::abs(deformed - expect) <= 1e-11 * std::max(1.0, std::abs(expect)));
        }
    }
}

TEST_CASE("per-pair deformation cache is stable across sizes and repeats") {
    NCDeformation def(SkewMatrix::theta12(0.3));
    IntSymMatrix a1 = presets::sec5_a1(), a2 = presets::sec5_a2(), a3 = presets::sec5_a3();
    CMat first = def.m(a1, a2).mat();
    cplx c_first = def.c(a2, a3);
    for (int round = 0; round < 3; ++round) {
        CHECK((def.m(a1, a2).mat() - first).cwiseAbs().maxCoeff() == 0.0);
        CHECK(def.c(a2, a3) == c_first);
        CHECK((def.m(a1, a3).mat() -
               compute_M(a1, a3, SkewMatrix::theta12(0.3)).mat())
                  .cwiseAbs()
                  .maxCoeff() < 1e-15);
    }
    NCDeformation def0(SkewMatrix(RMat::Zero(1, 1)));
    IntSymMatrix s0 = IntSymMatrix::scalar(0), s1 = IntSymMatrix::scalar(1);
    CHECK(std::abs(def0.c(s0, s1) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(def0.m(s0, s1).mat()(0, 0) - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("Siegel and characteristic validation") {
    CMat bad(1, 1);
    bad << cplx{0.0, -1.0};
    CHECK_THROWS_AS(SiegelPoint{bad}, not_siegel);
    CMat asym(2, 2);
    asym << cplx(0.0, 1.0), cplx(0.5, 0.0), cplx(-0.5, 0.0), cplx(0.0, 1.0);
    CHECK_THROWS_AS(SiegelPoint{asym}, not_siegel);
    ThetaCharacteristics ch(RVec(cvec1(cplx(1.75, 0.0)).real()), RVec(cvec1(cplx(-0.25, 0.0)).real()));
    CHECK(ch.c1[0] == doctest::Approx(0.75));
    CHECK(ch.c2[0] == doctest::Approx(0.75));
}
