#pragma once

#include <deque>
#include <mutex>

#include "nctheta/lattice.hpp"
#include "nctheta/linalg.hpp"

namespace nct {

/// Pair of characteristics, each stored reduced to [0, 1)^n.
struct ThetaCharacteristics {
    RVec c1;
    RVec c2;

    ThetaCharacteristics(RVec a, RVec b);
    static ThetaCharacteristics zero(int n);
};

/// Point of the Siegel upper half plane: complex symmetric with
/// positive-definite imaginary part (checked numerically).
class SiegelPoint {
  public:
    explicit SiegelPoint(CMat omega);
    const CMat& omega() const { return m_; }
    int n() const { return static_cast<int>(m_.rows()); }

  private:
    CMat m_;
};

struct ThetaValue {
    cplx value;
    int radius;
};

/// Theta function with characteristics as a certified truncated lattice sum:
/// the omitted tail is below tol in absolute value.
ThetaValue theta_with_char(const ThetaCharacteristics& ch, const SiegelPoint& omega,
                           const CVec& z, double tol = 1e-12);

/// Commutative basis function: the periodized Gaussian
///   sum_w exp(-pi (z + w - A_ab^{-1} mu)^T A_ab (z + w - A_ab^{-1} mu)).
ThetaValue e_comm(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const CosetIndex& mu,
                  const CVec& z, double tol = 1e-12);

/// Deformation matrix M_ab = (1 + (i/2)(A_a + A_b) theta)^{-1} (A_b - A_a).
/// Raises not_compatible when the result fails the symmetry tolerance and
/// not_positive_real when A_ab is positive definite but Re M_ab is not.
ComplexSymMatrix compute_M(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const SkewMatrix& theta);

/// Gaussian normalization
///   C_ab = det(1 + i A_a theta)^{1/4} det(1 + i A_b theta)^{1/4}
///          / det(1 + (i/2)(A_a + A_b) theta)^{1/2},
/// with each fractional power on the branch continuous in t along t*theta
/// from the value 1 at theta = 0.
cplx normalization_C(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const SkewMatrix& theta);

/// Fractional power of det(1 + i t X) at t = 1 on the branch continuous
/// from 1 at t = 0, tracked along 16 straight-path steps.
cplx det_power_continuous(const CMat& x, double exponent);

/// Noncommutative basis function C_ab * T^mu(exp(-pi x^T M_ab x)) at z.
ThetaValue e_nc(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const CosetIndex& mu,
                const CVec& z, const SkewMatrix& theta, double tol = 1e-12);

/// Per-pair cache of M_ab and C_ab for a fixed deformation parameter.
/// Concurrent reads are safe; the cache is guarded by a mutex.
class NCDeformation {
  public:
    explicit NCDeformation(SkewMatrix theta) : theta_(std::move(theta)) {}

    const SkewMatrix& theta() const { return theta_; }
    const ComplexSymMatrix& m(const IntSymMatrix& a_a, const IntSymMatrix& a_b) const;
    cplx c(const IntSymMatrix& a_a, const IntSymMatrix& a_b) const;

  private:
    struct PairData {
        ComplexSymMatrix m;
        cplx c;
    };
    const PairData& lookup(const IntSymMatrix& a_a, const IntSymMatrix& a_b) const;

    SkewMatrix theta_;
    mutable std::mutex mu_;
    // deque: references stay valid while new pairs are appended
    mutable std::deque<std::pair<std::pair<IMat, IMat>, PairData>> cache_;
};

}  // namespace nct
