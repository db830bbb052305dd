#pragma once

#include <complex>
#include <functional>

#include "nctheta/linalg.hpp"

namespace nct {

/// Compensated (Kahan) accumulator for complex values. Summation order is
/// always lexicographic over the truncation box, so results are
/// bit-reproducible across runs and thread counts.
class KahanSum {
  public:
    void add(cplx x) {
        cplx y = x - comp_;
        cplx t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    cplx value() const { return sum_; }

  private:
    cplx sum_{0.0, 0.0};
    cplx comp_{0.0, 0.0};
};

/// Smallest box radius R such that the lattice tail
///   sum over ||w - c0||_inf > R of amp * exp(-decay * max(0, r - dist)^2)
/// is below tol, where r is the infinity-norm shell radius and dist absorbs
/// both the half-cell rounding slack and any analytic center offset.
/// Throws truncation_overflow beyond `cap`.
int certify_radius(int n, double decay, double dist, double amp, double tol, int cap = 64);

/// Visit every integer point w with ||w - center||_inf <= radius in
/// lexicographic order.
void for_each_in_box(const IVec& center, int radius, const std::function<void(const IVec&)>& fn);

struct LatticeSum {
    cplx value;
    int radius;
};

/// Certified evaluation of  sum_{w in Z^n} exp(-pi (w + s)^T Q (w + s))
/// for complex symmetric Q with positive-definite real part and complex
/// shift s. The tail bound uses the smallest eigenvalue of Re Q with a 10%
/// safety margin; the imaginary parts of Q and s only enter through an
/// explicit amplitude factor obtained by completing the square.
LatticeSum gaussian_lattice_sum(const CMat& q, const CVec& shift, double tol, int cap = 64);

/// Real quadratic x^T h x + g^T x + c, reconstructed exactly from point
/// evaluations (the fit is exact because the target is a quadratic).
struct RealQuadratic {
    RMat h;
    RVec g;
    double c = 0.0;

    double operator()(const RVec& x) const { return x.dot(h * x) + g.dot(x) + c; }
};

RealQuadratic fit_quadratic(int n, const std::function<double(const RVec&)>& f);

/// For a quadratic with negative-definite h (a log-magnitude profile),
/// the peak location, peak value, and decay rate for shell bounds.
struct QuadraticPeak {
    RVec argmax;
    double maxval;
    double decay;  // 0.9 * lambda_min(-h)
};

QuadraticPeak analyze_concave(const RealQuadratic& q);

}  // namespace nct
