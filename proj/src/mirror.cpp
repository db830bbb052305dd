#include "nctheta/mirror.hpp"

#include <cmath>

namespace nct {

AffineLagrangian::AffineLagrangian(IntSymMatrix a, RVec c) : slope(std::move(a)), offset(std::move(c)) {
    if (offset.size() != slope.n()) throw dimension_mismatch("offset length must match slope");
}

RMat SymplecticForm::mat() const {
    RMat w = RMat::Zero(2 * n, 2 * n);
    w.topRightCorner(n, n) = -RMat::Identity(n, n);
    w.bottomLeftCorner(n, n) = RMat::Identity(n, n);
    return w;
}

double SymplecticForm::pair(const RVec& v, const RVec& w) const {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += -v[i] * w[n + i] + v[n + i] * w[i];
    return acc;
}

RVec intersection_point(const AffineLagrangian& la, const AffineLagrangian& lb) {
    if (la.n() != lb.n()) throw dimension_mismatch();
    IntSymMatrix diff = lb.slope - la.slope;
    if (diff.det() == 0) throw parallel_lagrangians();
    RMat diff_inv = rat_to_double(diff.inverse_rational());
    const int n = la.n();
    RVec v(2 * n);
    v.head(n) = -diff_inv * (lb.offset - la.offset);
    v.tail(n) = -la.slope.to_double() * diff_inv * lb.offset +
                lb.slope.to_double() * diff_inv * la.offset;
    return v;
}

double triangle_area(const RVec& v_ab, const RVec& v_bc, const RVec& v_ac,
                     const SymplecticForm& omega) {
    return omega.pair(RVec(v_ab - v_ac), RVec(v_bc - v_ac));
}

double c_mirror(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                const CosetIndex& mu, const CosetIndex& nu, const CosetIndex& rho,
                double tol) {
    const int n = a_a.n();
    IntSymMatrix a_ab = a_b - a_a, a_bc = a_c - a_b, a_ac = a_c - a_a;
    if (!is_positive_definite(a_ab) || !is_positive_definite(a_bc))
        throw not_positive_definite("c_mirror requires positive definite consecutive differences");
    if (mu.modulus() != a_ab || nu.modulus() != a_bc || rho.modulus() != a_ac)
        throw index_modulus_mismatch();

    // The area is a positive-definite quadratic in u' with Hessian
    // A_ab^{-1} + A_bc^{-1} centered at -A_ab A_ac^{-1} rho; the truncation
    // box is certified against that form.
    RMat q = rat_to_double(a_ab.inverse_rational()) + rat_to_double(a_bc.inverse_rational());
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (q + RMat(q.transpose())));
    double lam = 0.9 * es.eigenvalues().minCoeff();
    if (!(lam > 0.0)) throw not_positive_definite("area Hessian must be positive definite");
    int radius = certify_radius(n, M_PI * lam, 0.5, 1.0, tol);

    RVec center = -a_ab.to_double() * rat_to_double(a_ac.inverse_rational()) * rho.rep().cast<double>();
    IVec center_i(n);
    for (int i = 0; i < n; ++i) center_i[i] = static_cast<std::int64_t>(std::llround(center[i]));

    SymplecticForm omega{n};
    RVec zero = RVec::Zero(n);
    AffineLagrangian la(a_a, zero);
    AffineLagrangian lc(a_c, RVec(-rho.rep().cast<double>()));
    RVec v_ac = intersection_point(la, lc);

    KahanSum acc;
    for_each_in_box(center_i, radius, [&](const IVec& up) {
        if (!delta_mod(a_ab, mu.rep(), IVec(-up))) return;
        if (!delta_mod(a_bc, nu.rep(), IVec(up + rho.rep()))) return;
        AffineLagrangian lb(a_b, RVec(up.cast<double>()));
        double area = triangle_area(intersection_point(la, lb), intersection_point(lb, lc),
                                    v_ac, omega);
        acc.add(std::exp(-M_PI * area));
    });
    return acc.value().real();
}

}  // namespace nct
