#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "nctheta/presets.hpp"
#include "nctheta/structure.hpp"
#include "nctheta/verify.hpp"

using namespace nct;

namespace {

LabelTriple line_triple(double /*unused*/ = 0.0) {
    auto l = presets::line_triple();
    return LabelTriple(l[0], l[1], l[2], SkewMatrix(RMat::Zero(1, 1)));
}

}  // namespace

TEST_CASE("triple construction enforces the formula hypotheses") {
    SkewMatrix z2(RMat::Zero(2, 2));
    // Non-positive-definite consecutive difference.
    CHECK_THROWS_AS(LabelTriple(IntSymMatrix::scalar(1), IntSymMatrix::scalar(0),
                                IntSymMatrix::scalar(3), SkewMatrix(RMat::Zero(1, 1))),
                    not_positive_definite);
    // Degenerate difference.
    CHECK_THROWS_AS(LabelTriple(IntSymMatrix::scalar(1), IntSymMatrix::scalar(1),
                                IntSymMatrix::scalar(3), SkewMatrix(RMat::Zero(1, 1))),
                    index_modulus_mismatch);
    // Compatibility A_a theta A_a == A_b theta A_b fails off the det family.
    CHECK_THROWS_AS(LabelTriple(IntSymMatrix::diag({1, 1}), IntSymMatrix::diag({2, 3}),
                                IntSymMatrix::diag({4, 5}), SkewMatrix::theta12(0.3)),
                    not_compatible);
    // The determinant -4 family is compatible for every theta12.
    CHECK_NOTHROW(LabelTriple(presets::sec5_a1(), presets::sec5_a2(), presets::sec5_a3(),
                              SkewMatrix::theta12(0.7)));
}

TEST_CASE("commutative structure constants of the moduli-(1,2,3) triple") {
    LabelTriple triple = line_triple();
    IntSymMatrix ab = triple.ab(), bc = triple.bc(), ac = triple.ac();
    auto nu = coset_representatives(bc);   // moduli 2: reps 0, 1
    auto rho = coset_representatives(ac);  // moduli 3: reps 0, 1, 2
    CosetIndex mu = coset_representatives(ab)[0];

    // Closed forms: the u-sum is over u = nu mod 2 with weight
    // exp(-1.5 pi (u - 2 rho / 3)^2).
    double v00 = c_structure(triple, mu, nu[0], rho[0]).real();
    CHECK(v00 == doctest::Approx(1.0 + 2.0 * std::exp(-6.0 * M_PI)).epsilon(1e-13));
    double v10 = c_structure(triple, mu, nu[1], rho[0]).real();
    CHECK(v10 == doctest::Approx(2.0 * std::exp(-1.5 * M_PI)).epsilon(1e-12));
    double v01 = c_structure(triple, mu, nu[0], rho[1]).real();
    double expect01 = std::exp(-1.5 * M_PI * 4.0 / 9.0) + std::exp(-1.5 * M_PI * 16.0 / 9.0) +
                      std::exp(-1.5 * M_PI * 64.0 / 9.0);
    CHECK(v01 == doctest::Approx(expect01).epsilon(1e-12));

    // c_comm is the same computation, gated on theta = 0.
    CHECK(c_comm(triple, mu, nu[1], rho[0]) == c_structure(triple, mu, nu[1], rho[0]));
    CHECK_THROWS_AS(c_structure(triple, mu, nu[0], CosetIndex(bc, nu[0].rep())),
                    index_modulus_mismatch);
}

TEST_CASE("c_comm rejects deformed triples") {
    LabelTriple deformed(presets::sec5_a1(), presets::sec5_a2(), presets::sec5_a3(),
                         SkewMatrix::theta12(0.3));
    auto mu = coset_representatives(deformed.ab())[0];
    auto nu = coset_representatives(deformed.bc())[0];
    auto rho = coset_representatives(deformed.ac())[0];
    CHECK_THROWS_AS(c_comm(deformed, mu, nu, rho), not_compatible);
}

TEST_CASE("serial and parallel tensor tabulation are bit-identical") {
    for (double t : {0.0, 0.3}) {
        SkewMatrix theta = t == 0.0 ? SkewMatrix(RMat::Zero(2, 2)) : SkewMatrix::theta12(t);
        LabelTriple triple(presets::sec5_a1(), presets::sec5_a2(), presets::sec5_a3(), theta);
        StructureTensor serial = structure_tensor(triple, 1e-12, Execution::serial);
        StructureTensor parallel = structure_tensor(triple, 1e-12, Execution::parallel);
        REQUIRE(serial.values.size() == parallel.values.size());
        CHECK(serial.values.size() == 2 * 2 * 9);
        CHECK(std::memcmp(serial.values.data(), parallel.values.data(),
                          serial.values.size() * sizeof(cplx)) == 0);
    }
}

TEST_CASE("hom spaces: dimensions and basis indexing") {
    IntSymMatrix a1 = presets::sec5_a1(), a2 = presets::sec5_a2(), a3 = presets::sec5_a3();
    CHECK(hom_space(a1, a2).dimension == 2);
    CHECK(hom_space(a2, a3).dimension == 2);
    CHECK(hom_space(a1, a3).dimension == 9);
    CHECK(hom_space(a2, a1).dimension == 0);
    CHECK(hom_space(a3, a1).dimension == 0);
    CHECK(hom_space(a1, a1).dimension == 1);
    CHECK(hom_space(a1, a3).basis.size() == 9);
    CHECK_THROWS_AS(hom_space(IntSymMatrix::diag({1, 1}), IntSymMatrix::diag({2, 1})),
                    degenerate_difference);
}

TEST_CASE("seeded polydisc sampling is deterministic and in range") {
    std::mt19937_64 r1(77), r2(77);
    for (int trial = 0; trial < 20; ++trial) {
        CVec a = random_polydisc_point(2, r1);
        CVec b = random_polydisc_point(2, r2);
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
        for (int i = 0; i < 2; ++i) CHECK(std::abs(a[i]) <= 1.0);
    }
}

TEST_CASE("product formula sampling passes at both deformations") {
    Report comm = verify_addition(line_triple(), 10, 123, 1e-9);
    CHECK(comm.pass);
    CHECK(comm.checks == 10 * 1 * 2);
    Report deformed = verify_addition(LabelTriple(presets::sec5_a1(), presets::sec5_a2(),
                                                  presets::sec5_a3(), SkewMatrix::theta12(0.3)),
                                      3, 123, 1e-8);
    CHECK(deformed.pass);
    CHECK(deformed.checks == 3 * 2 * 2);
}

TEST_CASE("associativity contraction and its vacuous cases") {
    auto q = presets::line_quadruple();
    Report rep = check_associativity(q[0], q[1], q[2], q[3], SkewMatrix(RMat::Zero(1, 1)), 1e-9);
    CHECK(rep.pass);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.checks > 0);

    // Reordered labels break positivity: reported vacuous, not failed.
    Report vac = check_associativity(q[0], q[2], q[1], q[3], SkewMatrix(RMat::Zero(1, 1)), 1e-9);
    CHECK(vac.vacuous);
    CHECK(vac.pass);
}
