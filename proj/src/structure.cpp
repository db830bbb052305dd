#include "nctheta/structure.hpp"

#include <cmath>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nct {

namespace {

void check_dgcd(const IntSymMatrix& a, const IntSymMatrix& b, const SkewMatrix& theta) {
    RMat lhs = a.to_double() * theta.mat() * a.to_double();
    RMat rhs = b.to_double() * theta.mat() * b.to_double();
    double scale = std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
    if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-9 * std::max(scale, 1.0))
        throw not_compatible("A_a theta A_a != A_b theta A_b");
}

}  // namespace

LabelTriple::LabelTriple(IntSymMatrix a, IntSymMatrix b, IntSymMatrix c, SkewMatrix th)
    : a_a(std::move(a)), a_b(std::move(b)), a_c(std::move(c)), theta(std::move(th)) {
    if (a_a.n() != a_b.n() || a_a.n() != a_c.n() || theta.n() != a_a.n()) throw dimension_mismatch();
    if (ab().det() == 0 || bc().det() == 0) throw index_modulus_mismatch("degenerate label pair");
    if (!is_positive_definite(ab()) || !is_positive_definite(bc()))
        throw not_positive_definite("A_ab and A_bc must be positive definite");
    if (!theta.is_zero()) {
        check_dgcd(a_a, a_b, theta);
        check_dgcd(a_b, a_c, theta);
    }
}

cplx c_structure(const LabelTriple& triple, const CosetIndex& mu, const CosetIndex& nu,
                 const CosetIndex& rho, double tol) {
    const int n = triple.n();
    IntSymMatrix a_ab = triple.ab(), a_bc = triple.bc(), a_ac = triple.ac();
    if (mu.modulus() != a_ab || nu.modulus() != a_bc || rho.modulus() != a_ac)
        throw index_modulus_mismatch();

    RMat ab_inv = rat_to_double(a_ab.inverse_rational());
    RMat bc_inv = rat_to_double(a_bc.inverse_rational());
    CMat factor = CMat::Identity(n, n) +
                  cplx(0.0, 1.0) * triple.a_b.to_complex() * triple.theta.mat().cast<cplx>();
    CMat q = (ab_inv + bc_inv).cast<cplx>() * factor.fullPivLu().inverse();
    if (!ComplexSymMatrix::check_symmetric(q, 1e-10))
        throw not_compatible("structure-constant quadratic form is not symmetric");
    q = 0.5 * (q + CMat(q.transpose()));

    RMat re_q = 0.5 * (q.real() + RMat(q.real().transpose()));
    Eigen::SelfAdjointEigenSolver<RMat> es(re_q);
    double lam_raw = es.eigenvalues().minCoeff();
    if (!(lam_raw > 0.0)) throw not_positive_definite("Re of the u-sum form must be positive definite");
    int radius = certify_radius(n, M_PI * 0.9 * lam_raw, 0.5, 1.0, tol);

    RVec u0 = a_bc.to_double() * rat_to_double(a_ac.inverse_rational()) * rho.rep().cast<double>();

    // Solve the A_bc congruence first: admissible u = nu + A_bc k, then test
    // the A_ab congruence exactly. Enumerating a k-box that covers the
    // certified u-box only adds extra valid lattice terms.
    RMat bc_inv_abs = bc_inv.cwiseAbs();
    double opnorm = bc_inv_abs.rowwise().sum().maxCoeff();
    RVec kc = bc_inv * (u0 - nu.rep().cast<double>());
    IVec kc_i(n);
    for (int i = 0; i < n; ++i) kc_i[i] = static_cast<std::int64_t>(std::llround(kc[i]));
    int k_radius = static_cast<int>(std::ceil((radius + 1.0) * opnorm)) + 1;

    KahanSum acc;
    for_each_in_box(kc_i, k_radius, [&](const IVec& k) {
        IVec u = nu.rep() + IVec(a_bc.mat() * k);
        if (!delta_mod(a_ab, mu.rep(), IVec(rho.rep() - u))) return;
        CVec d = (u.cast<double>() - u0).cast<cplx>();
        cplx e = (d.transpose() * (q * d)).value();
        acc.add(std::exp(-M_PI * e));
    });
    return acc.value();
}

cplx c_comm(const LabelTriple& triple, const CosetIndex& mu, const CosetIndex& nu,
            const CosetIndex& rho, double tol) {
    if (!triple.commutative()) throw not_compatible("c_comm requires theta = 0");
    return c_structure(triple, mu, nu, rho, tol);
}

StructureTensor structure_tensor(const LabelTriple& triple, double tol, Execution exec) {
    StructureTensor t{triple,
                      coset_representatives(triple.ab()),
                      coset_representatives(triple.bc()),
                      coset_representatives(triple.ac()),
                      {}};
    const std::size_t nm = t.mu_reps.size(), nn = t.nu_reps.size(), nr = t.rho_reps.size();
    t.values.assign(nm * nn * nr, cplx{0.0, 0.0});
    const long total = static_cast<long>(nm * nn * nr);

    auto entry = [&](long idx) {
        std::size_t ir = idx % nr;
        std::size_t in = (idx / nr) % nn;
        std::size_t im = idx / (nr * nn);
        t.values[idx] = c_structure(triple, t.mu_reps[im], t.nu_reps[in], t.rho_reps[ir], tol);
    };

    if (exec == Execution::serial) {
        for (long idx = 0; idx < total; ++idx) entry(idx);
        return t;
    }

    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long idx = 0; idx < total; ++idx) {
        try {
            entry(idx);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return t;
}

HomSpace hom_space(const IntSymMatrix& a_a, const IntSymMatrix& a_b) {
    HomSpace h;
    if (a_a == a_b) {
        h.dimension = 1;  // spanned by the constant function
        return h;
    }
    IntSymMatrix diff = a_b - a_a;
    if (diff.det() == 0) throw degenerate_difference();
    if (!is_positive_definite(diff)) {
        h.dimension = 0;
        return h;
    }
    h.basis = coset_representatives(diff);
    h.dimension = static_cast<int>(h.basis.size());
    return h;
}

CVec random_polydisc_point(int n, std::mt19937_64& rng) {
    auto unif = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    CVec z(n);
    for (int i = 0; i < n; ++i) {
        double re, im;
        do {
            re = unif();
            im = unif();
        } while (re * re + im * im > 1.0);
        z[i] = cplx(re, im);
    }
    return z;
}

Report verify_addition(const LabelTriple& triple, int samples, std::uint64_t seed, double tol) {
    const double eval_tol = 1e-12;
    StructureTensor tensor = structure_tensor(triple, eval_tol);
    std::mt19937_64 rng(seed);
    Report rep;

    std::vector<FourierPolynomial> products;  // theta != 0: one per (mu, nu)
    if (!triple.commutative()) {
        for (const auto& mu : tensor.mu_reps)
            for (const auto& nu : tensor.nu_reps) {
                FourierPolynomial fab = truncate_theta_series(triple.a_a, triple.a_b, mu,
                                                              triple.theta, 0.5 * eval_tol);
                FourierPolynomial fbc = truncate_theta_series(triple.a_b, triple.a_c, nu,
                                                              triple.theta, 0.5 * eval_tol);
                products.push_back(star_fourier(fab, fbc, triple.theta));
            }
    }

    for (int s = 0; s < samples; ++s) {
        CVec z = random_polydisc_point(triple.n(), rng);
        for (std::size_t im = 0; im < tensor.mu_reps.size(); ++im) {
            for (std::size_t in = 0; in < tensor.nu_reps.size(); ++in) {
                cplx lhs, rhs{0.0, 0.0};
                if (triple.commutative()) {
                    lhs = e_comm(triple.a_a, triple.a_b, tensor.mu_reps[im], z, eval_tol).value *
                          e_comm(triple.a_b, triple.a_c, tensor.nu_reps[in], z, eval_tol).value;
                    for (std::size_t ir = 0; ir < tensor.rho_reps.size(); ++ir)
                        rhs += tensor.at(im, in, ir) *
                               e_comm(triple.a_a, triple.a_c, tensor.rho_reps[ir], z, eval_tol).value;
                } else {
                    lhs = products[im * tensor.nu_reps.size() + in].evaluate(z);
                    for (std::size_t ir = 0; ir < tensor.rho_reps.size(); ++ir)
                        rhs += tensor.at(im, in, ir) *
                               e_nc(triple.a_a, triple.a_c, tensor.rho_reps[ir], z, triple.theta,
                                    eval_tol)
                                   .value;
                }
                double denom = std::max(std::abs(lhs), std::abs(rhs));
                rep.record(std::abs(lhs - rhs) / std::max(denom, 1e-300));
            }
        }
    }
    rep.finalize(tol);
    return rep;
}

Report check_associativity(const IntSymMatrix& a_a, const IntSymMatrix& a_b,
                           const IntSymMatrix& a_c, const IntSymMatrix& a_d,
                           const SkewMatrix& theta, double tol) {
    Report rep;
    const double eval_tol = 1e-13;
    std::optional<StructureTensor> abc_opt, acd_opt, bcd_opt, abd_opt;
    try {
        abc_opt = structure_tensor(LabelTriple(a_a, a_b, a_c, theta), eval_tol);
        acd_opt = structure_tensor(LabelTriple(a_a, a_c, a_d, theta), eval_tol);
        bcd_opt = structure_tensor(LabelTriple(a_b, a_c, a_d, theta), eval_tol);
        abd_opt = structure_tensor(LabelTriple(a_a, a_b, a_d, theta), eval_tol);
    } catch (const not_positive_definite&) {
        rep.vacuous = true;
        rep.detail = "vacuous: quadruple fails the positivity hypotheses";
        return rep;
    } catch (const index_modulus_mismatch&) {
        rep.vacuous = true;
        rep.detail = "vacuous: degenerate label pair in the quadruple";
        return rep;
    }
    const StructureTensor& abc = *abc_opt;
    const StructureTensor& acd = *acd_opt;
    const StructureTensor& bcd = *bcd_opt;
    const StructureTensor& abd = *abd_opt;

    double max_diff = 0.0, max_mag = 0.0;
    for (std::size_t im = 0; im < abc.mu_reps.size(); ++im)
        for (std::size_t in = 0; in < abc.nu_reps.size(); ++in)
            for (std::size_t ik = 0; ik < acd.nu_reps.size(); ++ik)
                for (std::size_t ir = 0; ir < acd.rho_reps.size(); ++ir) {
                    cplx s1{0.0, 0.0}, s2{0.0, 0.0};
                    for (std::size_t il = 0; il < abc.rho_reps.size(); ++il)
                        s1 += abc.at(im, in, il) * acd.at(il, ik, ir);
                    for (std::size_t il = 0; il < bcd.rho_reps.size(); ++il)
                        s2 += bcd.at(in, ik, il) * abd.at(im, il, ir);
                    max_diff = std::max(max_diff, std::abs(s1 - s2));
                    max_mag = std::max({max_mag, std::abs(s1), std::abs(s2)});
                    ++rep.checks;
                }
    rep.max_err = max_diff / std::max(max_mag, 1e-300);
    rep.finalize(tol);
    return rep;
}

}  // namespace nct
