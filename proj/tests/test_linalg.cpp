#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "nctheta/linalg.hpp"

using namespace nct;

namespace {

IMat make(int n, std::initializer_list<std::int64_t> vals) {
    IMat m(n, n);
    int i = 0;
    for (auto v : vals) {
        m(i / n, i % n) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("exact determinant by fraction-free elimination") {
    CHECK(det_exact(make(1, {7})) == 7);
    CHECK(det_exact(make(2, {1, 2, 3, 4})) == -2);
    CHECK(det_exact(make(3, {2, 0, 1, 0, 3, 0, 1, 0, 2})) == 9);
    CHECK(det_exact(make(3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == 0);
    CHECK(det_exact(IMat(IMat::Identity(4, 4))) == 1);
}

TEST_CASE("adjugate satisfies A * adj(A) == det(A) * I") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        IMat a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = static_cast<std::int64_t>(rng() % 9) - 4;
        IMat prod = a * adjugate(a);
        IMat expect = det_exact(a) * IMat::Identity(n, n);
        CHECK(prod == expect);
    }
}

TEST_CASE("IntSymMatrix constructors and exact inverse") {
    IntSymMatrix d = IntSymMatrix::diag({1, -4});
    CHECK(d.n() == 2);
    CHECK(d(0, 0) == 1);
    CHECK(d(1, 1) == -4);
    CHECK(d.det() == -4);
    CHECK(IntSymMatrix::scalar(3).det() == 3);

    IntSymMatrix a{make(2, {2, 1, 1, 3})};
    RatMat inv = a.inverse_rational();
    // A * A^{-1} == I exactly in rational arithmetic.
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Rat s(0, 1);
            for (int k = 0; k < 2; ++k) s = s + Rat(a(i, k), 1) * inv(k, j);
            CHECK(s == Rat(i == j ? 1 : 0, 1));
        }

    IVec v(2);
    v << 5, -7;
    RatVec x = a.solve_rational(v);
    for (int i = 0; i < 2; ++i) {
        Rat s(0, 1);
        for (int k = 0; k < 2; ++k) s = s + Rat(a(i, k), 1) * x[k];
        CHECK(s == Rat(v[i], 1));
    }

    CHECK_THROWS_AS(IntSymMatrix::diag({0, 1}).inverse_rational(), singular_modulus);
    CHECK_THROWS_AS(IntSymMatrix{make(2, {1, 2, 3, 4})}, std::exception);  // not symmetric
}

TEST_CASE("positive definiteness by leading principal minors") {
    CHECK(is_positive_definite(IntSymMatrix::diag({1, 2})));
    CHECK(is_positive_definite(IntSymMatrix{make(2, {2, 1, 1, 3})}));
    CHECK_FALSE(is_positive_definite(IntSymMatrix::diag({1, -4})));
    CHECK_FALSE(is_positive_definite(IntSymMatrix{make(2, {2, 3, 3, 2})}));
    CHECK_FALSE(is_positive_definite(IntSymMatrix::diag({0, 1})));
    CHECK(is_positive_definite(IntSymMatrix::scalar(1)));
    CHECK_FALSE(is_positive_definite(IntSymMatrix::scalar(-1)));
}

TEST_CASE("Smith form: U A V == D with unimodular U, V") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        IMat a(n, n);
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = static_cast<std::int64_t>(rng() % 11) - 5;
        } while (det_exact(a) == 0);
        SmithForm f = smith_form(a);
        CHECK(IMat(f.u * a * f.v) == f.d);
        CHECK(std::abs(det_exact(f.u)) == 1);
        CHECK(std::abs(det_exact(f.v)) == 1);
        CHECK(IMat(f.u_inv * f.u) == IMat(IMat::Identity(n, n)));
        for (int i = 0; i < n; ++i) {
            CHECK(f.d(i, i) > 0);
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(f.d(i, j) == 0);
        }
    }
}

TEST_CASE("coset representatives: count, distinctness, reduction") {
    std::mt19937_64 rng(17);
    std::vector<IntSymMatrix> moduli = {IntSymMatrix::scalar(3), IntSymMatrix::diag({1, 2}),
                                        IntSymMatrix{make(2, {2, 1, 1, 3})},
                                        IntSymMatrix::diag({3, 3}),
                                        IntSymMatrix{make(2, {1, -1, -1, 2})}};
    for (const auto& a : moduli) {
        auto reps = coset_representatives(a);
        CHECK(static_cast<std::int64_t>(reps.size()) == std::abs(a.det()));
        std::set<int> positions;
        for (const auto& r : reps) positions.insert(coset_position(a, r.rep()));
        CHECK(positions.size() == reps.size());

        // Reduction is stable and lattice-shift invariant.
        for (int trial = 0; trial < 20; ++trial) {
            IVec v(a.n());
            for (int i = 0; i < a.n(); ++i) v[i] = static_cast<std::int64_t>(rng() % 41) - 20;
            CosetIndex c = reduce_mod(a, v);
            CHECK(reduce_mod(a, c.rep()) == c);
            IVec k(a.n());
            for (int i = 0; i < a.n(); ++i) k[i] = static_cast<std::int64_t>(rng() % 7) - 3;
            IVec shifted = v + IVec(a.mat() * k);
            CHECK(coset_position(a, shifted) == coset_position(a, v));
            CHECK(delta_mod(a, v, shifted) == 1);
        }
    }
}

TEST_CASE("delta_mod is the exact lattice membership test") {
    IntSymMatrix a = IntSymMatrix::diag({2, 3});
    IVec mu(2), rho(2);
    mu << 1, 2;
    rho << 3, 5;  // difference (2, 3) = A * (1, 1)
    CHECK(delta_mod(a, mu, rho) == 1);
    rho << 2, 5;  // difference (1, 3) not in the lattice
    CHECK(delta_mod(a, mu, rho) == 0);
    CHECK_THROWS_AS(delta_mod(IntSymMatrix::diag({0, 1}), mu, rho), singular_modulus);
}

TEST_CASE("caches stay correct when moduli of different sizes interleave") {
    // Regression: the Smith/representative caches must never match entries
    // across dimensions.
    IntSymMatrix s3 = IntSymMatrix::scalar(3);
    IntSymMatrix d6 = IntSymMatrix::diag({2, 3});
    for (int round = 0; round < 3; ++round) {
        CHECK(coset_representatives(s3).size() == 3);
        CHECK(coset_representatives(d6).size() == 6);
        IVec v1(1), v2(2);
        v1 << 7;
        v2 << 7, 8;
        CHECK(reduce_mod(s3, v1).rep()[0] == 1);
        CHECK(coset_position(d6, v2) == coset_position(d6, IVec(v2 + IVec(d6.mat() * v2))));
    }
    CHECK_FALSE(s3 == d6);
    CHECK(s3 != d6);
}

TEST_CASE("CosetIndex equality requires matching modulus and representative") {
    IntSymMatrix a = IntSymMatrix::scalar(3);
    IntSymMatrix b = IntSymMatrix::diag({1, 3});
    IVec v1(1), v2(2);
    v1 << 1;
    v2 << 0, 1;
    CHECK(CosetIndex(a, v1) == CosetIndex(a, v1));
    CHECK_FALSE(CosetIndex(a, v1) == CosetIndex(b, v2));
}
