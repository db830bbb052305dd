#pragma once

#include <map>
#include <vector>

#include "nctheta/theta.hpp"

namespace nct {

/// Finite lattice Fourier series: integer frequency vectors plus one shared
/// real characteristic offset. Termwise products stay exact in structure;
/// floating point enters only through coefficients and phases.
class FourierPolynomial {
  public:
    using Freq = std::vector<std::int64_t>;

    explicit FourierPolynomial(int n) : n_(n), offset_(RVec::Zero(n)) {}
    FourierPolynomial(int n, RVec offset) : n_(n), offset_(std::move(offset)) {}

    int n() const { return n_; }
    const RVec& offset() const { return offset_; }
    const std::map<Freq, cplx>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Freq& m, cplx coeff);
    /// Drop terms below `rel` times the largest coefficient magnitude.
    void prune(double rel = 1e-16);

    static FourierPolynomial plane_wave(int n, const Freq& m, cplx coeff = {1.0, 0.0});

    /// Value sum_m coeff_m exp(2 pi i (m + offset) . z).
    cplx evaluate(const CVec& z) const;

  private:
    int n_;
    RVec offset_;
    std::map<Freq, cplx> terms_;
};

struct StarConfig {
    SkewMatrix theta;
    int oracle_order = 12;
    double tol = 1e-12;
};

/// Phase picked up by two plane waves under the Moyal product: exp(i pi a^T theta b).
cplx plane_wave_phase(const RVec& a, const RVec& b, const SkewMatrix& theta);

/// Exact termwise Moyal product via the plane-wave phase rule.
FourierPolynomial star_fourier(const FourierPolynomial& f, const FourierPolynomial& g,
                               const SkewMatrix& theta);

/// Independent check: truncated exponential-bidifferential series applied by
/// exact term differentiation, evaluated at z. Never used on Gaussians.
cplx moyal_oracle(const FourierPolynomial& f, const FourierPolynomial& g, const CVec& z,
                  const StarConfig& cfg);

/// Fourier expansion of the (possibly deformed) basis function, truncated so
/// the dropped tail is below tol uniformly for |Im z_i| <= 1.
FourierPolynomial truncate_theta_series(const IntSymMatrix& a_a, const IntSymMatrix& a_b,
                                        const CosetIndex& mu, const SkewMatrix& theta,
                                        double tol = 1e-12);

/// Left-hand side of the deformed product formula:
/// (series_ab star series_bc) evaluated at z.
cplx star_theta_eval(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                     const CosetIndex& mu, const CosetIndex& nu, const CVec& z,
                     const SkewMatrix& theta, double tol = 1e-12);

}  // namespace nct
