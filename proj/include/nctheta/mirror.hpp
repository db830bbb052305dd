#pragma once

#include "nctheta/lattice.hpp"
#include "nctheta/linalg.hpp"

namespace nct {

/// Affine lagrangian yhat = A x + c inside R^{2n}.
struct AffineLagrangian {
    IntSymMatrix slope;
    RVec offset;

    AffineLagrangian(IntSymMatrix a, RVec c);
    int n() const { return slope.n(); }
};

/// The constant symplectic form [[0, -1], [1, 0]] in n-blocks.
struct SymplecticForm {
    int n;

    RMat mat() const;
    /// v^T omega w.
    double pair(const RVec& v, const RVec& w) const;
};

/// Intersection of two affine lagrangians, a single point
/// (x, yhat) = (-A_ab^{-1}(c_b - c_a), -A_a A_ab^{-1} c_b + A_b A_ab^{-1} c_a).
RVec intersection_point(const AffineLagrangian& la, const AffineLagrangian& lb);

/// Symplectic triangle area (v_ab - v_ac)^T omega (v_bc - v_ac).
double triangle_area(const RVec& v_ab, const RVec& v_bc, const RVec& v_ac,
                     const SymplecticForm& omega);

/// Structure constant from exponentiated triangle areas: sum over u' of
/// delta^mu_{A_ab, -u'} delta^nu_{A_bc, u'+rho} exp(-pi * area), where the
/// triangle is spanned by offsets c_a = 0, c_b = u', c_c = -rho.
double c_mirror(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                const CosetIndex& mu, const CosetIndex& nu, const CosetIndex& rho,
                double tol = 1e-12);

}  // namespace nct
