#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nctheta/lattice.hpp"

using namespace nct;

namespace {

// Reference sum over a large fixed box, no certification logic involved.
cplx brute_gaussian_sum(const CMat& q, const CVec& shift, int radius) {
    const int n = static_cast<int>(q.rows());
    KahanSum acc;
    for_each_in_box(IVec::Zero(n), radius, [&](const IVec& w) {
        CVec v = w.cast<double>().cast<cplx>() + shift;
        cplx e = (v.transpose() * (q * v)).value();
        acc.add(std::exp(-M_PI * e));
    });
    return acc.value();
}

}  // namespace

TEST_CASE("KahanSum compensates accumulation error") {
    KahanSum acc;
    acc.add(cplx{1.0, 0.0});
    for (int i = 0; i < 10000000; ++i) acc.add(cplx{1e-16, 1e-16});
    CHECK(std::abs(acc.value().real() - (1.0 + 1e-9)) < 1e-15);
    CHECK(std::abs(acc.value().imag() - 1e-9) < 1e-15);
}

TEST_CASE("for_each_in_box visits (2r+1)^n points in lexicographic order") {
    IVec center(2);
    center << 3, -2;
    std::vector<IVec> seen;
    for_each_in_box(center, 2, [&](const IVec& w) { seen.push_back(w); });
    CHECK(seen.size() == 25);
    CHECK(seen.front()[0] == 1);
    CHECK(seen.front()[1] == -4);
    CHECK(seen.back()[0] == 5);
    CHECK(seen.back()[1] == 0);
    for (std::size_t i = 1; i < seen.size(); ++i) {
        bool less = seen[i - 1][0] < seen[i][0] ||
                    (seen[i - 1][0] == seen[i][0] && seen[i - 1][1] < seen[i][1]);
        CHECK(less);
    }
}

TEST_CASE("certify_radius bounds the true Gaussian tail") {
    // Scalar Gaussian exp(-pi w^2): radius certified at tol must leave a
    // true tail below tol.
    for (double tol : {1e-6, 1e-10, 1e-14}) {
        int r = certify_radius(1, M_PI, 0.5, 1.0, tol);
        double tail = 0.0;
        for (int w = r + 1; w < r + 200; ++w) tail += 2.0 * std::exp(-M_PI * w * w);
        CHECK(tail <= tol);
    }
    // Tighter tolerance never shrinks the radius.
    CHECK(certify_radius(2, 1.0, 0.5, 1.0, 1e-12) >=
          certify_radius(2, 1.0, 0.5, 1.0, 1e-6));
    CHECK_THROWS_AS(certify_radius(1, -1.0, 0.5, 1.0, 1e-6), not_positive_definite);
    CHECK_THROWS_AS(certify_radius(1, 1e-9, 0.5, 1.0, 1e-300), truncation_overflow);
}

TEST_CASE("gaussian_lattice_sum reproduces the scalar theta constant") {
    CMat q(1, 1);
    q << cplx{1.0, 0.0};
    CVec s = CVec::Zero(1);
    LatticeSum v = gaussian_lattice_sum(q, s, 1e-14);
    // sum over integers of exp(-pi m^2)
    CHECK(v.value.real() == doctest::Approx(1.0864348112133080).epsilon(1e-13));
    CHECK(std::abs(v.value.imag()) < 1e-15);
}

TEST_CASE("gaussian_lattice_sum matches a brute-force box sum") {
    std::mt19937_64 rng(23);
    auto unif = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + static_cast<int>(rng() % 2);
        RMat b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = unif();
        RMat re = b * b.transpose() + 0.5 * RMat::Identity(n, n);
        RMat im(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) im(i, j) = im(j, i) = 0.3 * unif();
        CMat q = re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
        CVec shift(n);
        for (int i = 0; i < n; ++i) shift[i] = cplx(unif(), 0.5 * unif());
        cplx certified = gaussian_lattice_sum(q, shift, 1e-12).value;
        cplx brute = brute_gaussian_sum(q, shift, 25);
        CHECK(std::abs(certified - brute) <= 1e-11 * std::max(1.0, std::abs(brute)));
    }
    CMat bad(1, 1);
    bad << cplx{-1.0, 0.0};
    CHECK_THROWS_AS(gaussian_lattice_sum(bad, CVec::Zero(1), 1e-10), not_positive_definite);
}

TEST_CASE("fit_quadratic recovers an exact quadratic") {
    RMat h(2, 2);
    h << 2.0, -0.5, -0.5, 1.0;
    RVec g(2);
    g << 0.7, -1.3;
    double c = 0.25;
    auto f = [&](const RVec& x) { return x.dot(h * x) + g.dot(x) + c; };
    RealQuadratic q = fit_quadratic(2, f);
    CHECK((q.h - h).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((q.g - g).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(q.c == doctest::Approx(c).epsilon(1e-14));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        RVec x(2);
        x << static_cast<double>(rng() % 100) / 10.0 - 5.0,
            static_cast<double>(rng() % 100) / 10.0 - 5.0;
        CHECK(q(x) == doctest::Approx(f(x)).epsilon(1e-10));
    }
}

TEST_CASE("analyze_concave finds the peak of a concave profile") {
    RealQuadratic q;
    q.h = RMat(1, 1);
    q.h << -2.0;
    q.g = RVec(1);
    q.g << 4.0;  // peak at x = 1, value 2 + c
    q.c = -1.0;
    QuadraticPeak p = analyze_concave(q);
    CHECK(p.argmax[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.maxval == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.decay == doctest::Approx(0.9 * 2.0).epsilon(1e-12));

    RealQuadratic flat;
    flat.h = RMat::Zero(1, 1);
    flat.g = RVec::Zero(1);
    CHECK_THROWS_AS(analyze_concave(flat), not_positive_definite);
}
