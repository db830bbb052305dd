#include "nctheta/theta.hpp"

#include <cmath>

namespace nct {

namespace {

double frac01(double x) {
    double f = x - std::floor(x);
    return (f >= 1.0) ? 0.0 : f;
}

}  // namespace

ThetaCharacteristics::ThetaCharacteristics(RVec a, RVec b) : c1(std::move(a)), c2(std::move(b)) {
    if (c1.size() != c2.size()) throw dimension_mismatch("characteristics must share dimension");
    for (Eigen::Index i = 0; i < c1.size(); ++i) {
        c1[i] = frac01(c1[i]);
        c2[i] = frac01(c2[i]);
    }
}

ThetaCharacteristics ThetaCharacteristics::zero(int n) {
    return ThetaCharacteristics(RVec::Zero(n), RVec::Zero(n));
}

SiegelPoint::SiegelPoint(CMat omega) : m_(std::move(omega)) {
    if (m_.rows() != m_.cols()) throw not_siegel("Omega must be square");
    if (!ComplexSymMatrix::check_symmetric(m_)) throw not_siegel("Omega must be symmetric");
    Eigen::SelfAdjointEigenSolver<RMat> es(RMat(0.5 * (m_.imag() + RMat(m_.imag().transpose()))));
    if (!(es.eigenvalues().minCoeff() > 0.0)) throw not_siegel();
}

ThetaValue theta_with_char(const ThetaCharacteristics& ch, const SiegelPoint& omega,
                           const CVec& z, double tol) {
    const int n = omega.n();
    if (ch.c1.size() != n || z.size() != n) throw dimension_mismatch();
    // exp(pi i v^T Omega v + 2 pi i v^T u), v = m + c1, u = z + c2, as a
    // shifted Gaussian sum with Q = -i Omega and prefactor exp(-pi u^T Q^{-1} u).
    CMat q = cplx(0.0, -1.0) * omega.omega();
    CVec u = z + ch.c2.cast<cplx>();
    CVec qinv_u = q.fullPivLu().solve(u);
    cplx pref = std::exp(-M_PI * (u.transpose() * qinv_u).value());
    CVec shift = ch.c1.cast<cplx>() - cplx(0.0, 1.0) * qinv_u;
    double inner_tol = tol / std::max(std::abs(pref), 1e-300);
    LatticeSum s = gaussian_lattice_sum(q, shift, inner_tol);
    return {pref * s.value, s.radius};
}

ThetaValue e_comm(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const CosetIndex& mu,
                  const CVec& z, double tol) {
    IntSymMatrix a_ab = a_b - a_a;
    if (!is_positive_definite(a_ab)) throw not_positive_definite("A_ab must be positive definite");
    if (mu.modulus() != a_ab) throw index_modulus_mismatch();
    RVec center = rat_to_double(a_ab.solve_rational(mu.rep()));
    CVec shift = z - center.cast<cplx>();
    LatticeSum s = gaussian_lattice_sum(a_ab.to_complex(), shift, tol);
    return {s.value, s.radius};
}

ComplexSymMatrix compute_M(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const SkewMatrix& theta) {
    const int n = a_a.n();
    if (a_b.n() != n || theta.n() != n) throw dimension_mismatch();
    IntSymMatrix a_ab = a_b - a_a;
    if (a_ab.det() == 0) throw singular_modulus("A_ab must be nonsingular");
    CMat plus = (a_a + a_b).to_complex();
    CMat factor = CMat::Identity(n, n) + cplx(0.0, 0.5) * plus * theta.mat().cast<cplx>();
    Eigen::FullPivLU<CMat> lu(factor);
    if (!lu.isInvertible()) throw singular_deformation();
    CMat m = lu.solve(a_ab.to_complex());
    if (!ComplexSymMatrix::check_symmetric(m))
        throw not_compatible("M_ab fails the symmetry tolerance: A_a theta A_a != A_b theta A_b");
    CMat sym = 0.5 * (m + CMat(m.transpose()));
    if (is_positive_definite(a_ab)) {
        Eigen::SelfAdjointEigenSolver<RMat> es(RMat(0.5 * (sym.real() + RMat(sym.real().transpose()))));
        if (!(es.eigenvalues().minCoeff() > 0.0)) throw not_positive_real();
    }
    return ComplexSymMatrix(sym, false);
}

cplx det_power_continuous(const CMat& x, double exponent) {
    const int n = static_cast<int>(x.rows());
    const int steps = 16;
    double arg = 0.0;
    cplx prev(1.0, 0.0);
    cplx cur(1.0, 0.0);
    for (int k = 1; k <= steps; ++k) {
        double t = static_cast<double>(k) / steps;
        cur = (CMat::Identity(n, n) + cplx(0.0, t) * x).determinant();
        if (std::abs(cur) == 0.0) throw singular_deformation("determinant vanishes along the branch path");
        arg += std::arg(cur / prev);
        prev = cur;
    }
    return std::pow(std::abs(cur), exponent) * std::exp(cplx(0.0, exponent * arg));
}

cplx normalization_C(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const SkewMatrix& theta) {
    CMat th = theta.mat().cast<cplx>();
    cplx fa = det_power_continuous(CMat(a_a.to_complex() * th), 0.25);
    cplx fb = det_power_continuous(CMat(a_b.to_complex() * th), 0.25);
    cplx fp = det_power_continuous(CMat(0.5 * (a_a + a_b).to_complex() * th), 0.5);
    return fa * fb / fp;
}

ThetaValue e_nc(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const CosetIndex& mu,
                const CVec& z, const SkewMatrix& theta, double tol) {
    IntSymMatrix a_ab = a_b - a_a;
    if (!is_positive_definite(a_ab)) throw not_positive_definite("A_ab must be positive definite");
    if (mu.modulus() != a_ab) throw index_modulus_mismatch();
    ComplexSymMatrix m = compute_M(a_a, a_b, theta);
    cplx c_ab = normalization_C(a_a, a_b, theta);
    RVec center = rat_to_double(a_ab.solve_rational(mu.rep()));
    CVec shift = z - center.cast<cplx>();
    LatticeSum s = gaussian_lattice_sum(m.mat(), shift, tol / std::max(std::abs(c_ab), 1e-300));
    return {c_ab * s.value, s.radius};
}

const NCDeformation::PairData& NCDeformation::lookup(const IntSymMatrix& a_a,
                                                     const IntSymMatrix& a_b) const {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& [key, data] : cache_)
        if (key.first.rows() == a_a.mat().rows() && key.first == a_a.mat() &&
            key.second == a_b.mat())
            return data;
    PairData d{compute_M(a_a, a_b, theta_), normalization_C(a_a, a_b, theta_)};
    cache_.emplace_back(std::make_pair(a_a.mat(), a_b.mat()), std::move(d));
    return cache_.back().second;
}

const ComplexSymMatrix& NCDeformation::m(const IntSymMatrix& a_a, const IntSymMatrix& a_b) const {
    return lookup(a_a, a_b).m;
}

cplx NCDeformation::c(const IntSymMatrix& a_a, const IntSymMatrix& a_b) const {
    return lookup(a_a, a_b).c;
}

}  // namespace nct
