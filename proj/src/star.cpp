#include "nctheta/star.hpp"

#include <cmath>

namespace nct {

void FourierPolynomial::add_term(const Freq& m, cplx coeff) {
    if (static_cast<int>(m.size()) != n_) throw dimension_mismatch("frequency has wrong dimension");
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) it->second += coeff;
    if (it->second == cplx{0.0, 0.0}) terms_.erase(it);
}

void FourierPolynomial::prune(double rel) {
    double peak = 0.0;
    for (const auto& [m, c] : terms_) peak = std::max(peak, std::abs(c));
    double cut = rel * peak;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < cut)
            it = terms_.erase(it);
        else
            ++it;
    }
}

FourierPolynomial FourierPolynomial::plane_wave(int n, const Freq& m, cplx coeff) {
    FourierPolynomial p(n);
    p.add_term(m, coeff);
    return p;
}

cplx FourierPolynomial::evaluate(const CVec& z) const {
    if (static_cast<int>(z.size()) != n_) throw dimension_mismatch();
    KahanSum acc;
    for (const auto& [m, c] : terms_) {
        cplx phase{0.0, 0.0};
        for (int i = 0; i < n_; ++i) phase += (static_cast<double>(m[i]) + offset_[i]) * z[i];
        acc.add(c * std::exp(cplx(0.0, 2.0 * M_PI) * phase));
    }
    return acc.value();
}

cplx plane_wave_phase(const RVec& a, const RVec& b, const SkewMatrix& theta) {
    double s = a.dot(theta.mat() * b);
    return std::exp(cplx(0.0, M_PI * s));
}

namespace {

RVec real_freq(const FourierPolynomial& p, const FourierPolynomial::Freq& m) {
    RVec f(p.n());
    for (int i = 0; i < p.n(); ++i) f[i] = static_cast<double>(m[i]) + p.offset()[i];
    return f;
}

}  // namespace

FourierPolynomial star_fourier(const FourierPolynomial& f, const FourierPolynomial& g,
                               const SkewMatrix& theta) {
    if (f.n() != g.n()) throw dimension_mismatch("star product needs equal dimensions");
    FourierPolynomial out(f.n(), RVec(f.offset() + g.offset()));
    for (const auto& [ma, ca] : f.terms()) {
        RVec fa = real_freq(f, ma);
        for (const auto& [mb, cb] : g.terms()) {
            RVec fb = real_freq(g, mb);
            FourierPolynomial::Freq m(ma.size());
            for (std::size_t i = 0; i < ma.size(); ++i) m[i] = ma[i] + mb[i];
            out.add_term(m, ca * cb * plane_wave_phase(fa, fb, theta));
        }
    }
    // No pruning: off the real axis a term of frequency m is amplified by up
    // to exp(2 pi |m|_1), so small raw coefficients can still matter.
    return out;
}

cplx moyal_oracle(const FourierPolynomial& f, const FourierPolynomial& g, const CVec& z,
                  const StarConfig& cfg) {
    if (f.n() != g.n()) throw dimension_mismatch();
    const int n = f.n();
    KahanSum acc;
    for (const auto& [ma, ca] : f.terms()) {
        RVec fa = real_freq(f, ma);
        for (const auto& [mb, cb] : g.terms()) {
            RVec fb = real_freq(g, mb);
            // One application of the bidifferential to this pair of plane
            // waves multiplies by sum_ij (2 pi i a_i) theta_ij (2 pi i b_j).
            cplx d{0.0, 0.0};
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    d += cplx(0.0, 2.0 * M_PI * fa[i]) * cfg.theta.mat()(i, j) *
                         cplx(0.0, 2.0 * M_PI * fb[j]);
            cplx series{0.0, 0.0};
            cplx term{1.0, 0.0};
            for (int k = 0; k <= cfg.oracle_order; ++k) {
                series += term;
                term *= cplx(0.0, -1.0 / (4.0 * M_PI)) * d / static_cast<double>(k + 1);
            }
            cplx phase{0.0, 0.0};
            for (int i = 0; i < n; ++i) phase += (fa[i] + fb[i]) * z[i];
            acc.add(ca * cb * series * std::exp(cplx(0.0, 2.0 * M_PI) * phase));
        }
    }
    return acc.value();
}

FourierPolynomial truncate_theta_series(const IntSymMatrix& a_a, const IntSymMatrix& a_b,
                                        const CosetIndex& mu, const SkewMatrix& theta,
                                        double tol) {
    IntSymMatrix a_ab = a_b - a_a;
    if (!is_positive_definite(a_ab)) throw not_positive_definite("A_ab must be positive definite");
    if (mu.modulus() != a_ab) throw index_modulus_mismatch();
    const int n = a_ab.n();

    ComplexSymMatrix m_ab = compute_M(a_a, a_b, theta);
    CMat minv = m_ab.mat().fullPivLu().inverse();
    minv = 0.5 * (minv + CMat(minv.transpose()));

    // theta-series normalization: the C_ab numerator over det(A_ab)^{1/2}.
    CMat th = theta.mat().cast<cplx>();
    cplx norm = det_power_continuous(CMat(a_a.to_complex() * th), 0.25) *
                det_power_continuous(CMat(a_b.to_complex() * th), 0.25) /
                std::sqrt(static_cast<double>(a_ab.det()));

    RVec c2 = -rat_to_double(a_ab.solve_rational(mu.rep()));

    // |coeff_m| = |norm| exp(-pi m^T A_ab^{-1} m); uniform control on the
    // closed unit polydisc in Im z costs a factor exp(2 pi |m|_1).
    RMat re_minv = 0.5 * (minv.real() + RMat(minv.real().transpose()));
    Eigen::SelfAdjointEigenSolver<RMat> es(re_minv);
    double lam_raw = es.eigenvalues().minCoeff();
    if (!(lam_raw > 0.0)) throw not_positive_definite("Re M^{-1} must be positive definite");
    // In infinity-norm shells r: |coeff| <= |norm| exp(-pi lam r^2) and the
    // polydisc factor is exp(2 pi |m|_1) <= exp(2 pi n r), so the shell bound
    // peaks at r = n / lam with amplitude |norm| exp(pi n^2 / lam).
    double lam = 0.9 * lam_raw;
    double d = static_cast<double>(n) / lam;
    double amp = std::abs(norm) * std::exp(M_PI * static_cast<double>(n * n) / lam);
    int radius = certify_radius(n, M_PI * lam, 0.5 + d, amp, tol);

    FourierPolynomial out(n);
    for_each_in_box(IVec::Zero(n), radius, [&](const IVec& m) {
        CVec mv = m.cast<double>().cast<cplx>();
        cplx quad = (mv.transpose() * (minv * mv)).value();
        double phase = 0.0;
        for (int i = 0; i < n; ++i) phase += static_cast<double>(m[i]) * c2[i];
        cplx coeff = norm * std::exp(-M_PI * quad + cplx(0.0, 2.0 * M_PI * phase));
        FourierPolynomial::Freq key(n);
        for (int i = 0; i < n; ++i) key[i] = m[i];
        out.add_term(key, coeff);
    });
    return out;
}

cplx star_theta_eval(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                     const CosetIndex& mu, const CosetIndex& nu, const CVec& z,
                     const SkewMatrix& theta, double tol) {
    FourierPolynomial fab = truncate_theta_series(a_a, a_b, mu, theta, 0.5 * tol);
    FourierPolynomial fbc = truncate_theta_series(a_b, a_c, nu, theta, 0.5 * tol);
    FourierPolynomial prod = star_fourier(fab, fbc, theta);
    return prod.evaluate(z);
}

}  // namespace nct
