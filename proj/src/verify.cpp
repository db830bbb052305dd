#include "nctheta/verify.hpp"

#include <cmath>

namespace nct {

namespace {

double unif(std::mt19937_64& rng) {  // uniform in [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double unif_sym(std::mt19937_64& rng) { return 2.0 * unif(rng) - 1.0; }

RVec random_vec(int n, double scale, std::mt19937_64& rng) {
    RVec v(n);
    for (int i = 0; i < n; ++i) v[i] = scale * unif_sym(rng);
    return v;
}

/// Random symmetric integer matrix with a positive-definite difference story:
/// entries bounded, retried until positive definite.
IntSymMatrix random_pd_int(int n, std::int64_t bound, std::mt19937_64& rng) {
    for (;;) {
        IMat m(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = 1 + static_cast<std::int64_t>(unif(rng) * static_cast<double>(bound));
            for (int j = i + 1; j < n; ++j) {
                std::int64_t v = static_cast<std::int64_t>(unif(rng) * 3.0) - 1;
                m(i, j) = v;
                m(j, i) = v;
            }
        }
        IntSymMatrix s{m};
        if (is_positive_definite(s)) return s;
    }
}

IntSymMatrix random_sym_int(int n, std::int64_t bound, std::mt19937_64& rng) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = static_cast<std::int64_t>(unif(rng) * (2.0 * bound + 1.0)) - bound;
        for (int j = i + 1; j < n; ++j) {
            std::int64_t v = static_cast<std::int64_t>(unif(rng) * (2.0 * bound + 1.0)) - bound;
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return IntSymMatrix{m};
}

}  // namespace

GaussianAtom random_atom(int n, std::mt19937_64& rng) {
    RMat b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = 0.6 * unif_sym(rng);
    RMat re = b * b.transpose() + 0.6 * RMat::Identity(n, n);
    RMat im(n, n);
    for (int i = 0; i < n; ++i) {
        im(i, i) = 0.2 * unif_sym(rng);
        for (int j = i + 1; j < n; ++j) {
            double v = 0.2 * unif_sym(rng);
            im(i, j) = v;
            im(j, i) = v;
        }
    }
    GaussianAtom a;
    a.m = re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
    a.s = random_vec(n, 0.3, rng).cast<cplx>();
    a.k = random_vec(n, 1.0, rng).cast<cplx>();
    a.amp = (0.5 + unif(rng)) * std::exp(cplx(0.0, 2.0 * M_PI * unif(rng)));
    return a;
}

SchwartzElement random_element(const IntSymMatrix& modulus, std::mt19937_64& rng) {
    SchwartzElement e(modulus);
    for (int pos = 0; pos < e.coset_count(); ++pos) e.add_atom(pos, random_atom(modulus.n(), rng));
    return e;
}

Report verify_poisson(int matrix_samples, int z_samples, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    Report rep;
    for (int t = 0; t < matrix_samples; ++t) {
        int n = 1 + static_cast<int>(unif(rng) * 2.0);
        IntSymMatrix a_a = random_sym_int(n, 2, rng);
        IntSymMatrix a_ab = random_pd_int(n, 3, rng);
        IntSymMatrix a_b = a_a + a_ab;
        auto reps = coset_representatives(a_ab);
        CosetIndex mu = reps[static_cast<std::size_t>(unif(rng) * static_cast<double>(reps.size()))];

        RMat ab_inv = rat_to_double(a_ab.inverse_rational());
        SiegelPoint omega(CMat(cplx(0.0, 1.0) * ab_inv.cast<cplx>()));
        ThetaCharacteristics ch(RVec(RVec::Zero(n)), RVec(-ab_inv * mu.rep().cast<double>()));
        double norm = 1.0 / std::sqrt(static_cast<double>(a_ab.det()));

        for (int s = 0; s < z_samples; ++s) {
            CVec z = random_polydisc_point(n, rng);
            cplx lhs = e_comm(a_a, a_b, mu, z, 1e-13).value;
            cplx rhs = norm * theta_with_char(ch, omega, z, 1e-13).value;
            rep.record(std::abs(lhs - rhs));
        }
    }
    rep.finalize(tol);
    return rep;
}

Report verify_star_oracle(int term_count, int z_samples, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    const int n = 2;
    StarConfig cfg{SkewMatrix::theta12(0.02), 20, 1e-12};

    auto random_series = [&]() {
        FourierPolynomial f(n, random_vec(n, 0.25, rng) + RVec::Constant(n, 0.25));
        for (int t = 0; t < term_count; ++t) {
            FourierPolynomial::Freq m(n);
            for (int i = 0; i < n; ++i) m[i] = static_cast<std::int64_t>(unif(rng) * 5.0) - 2;
            f.add_term(m, cplx(unif_sym(rng), unif_sym(rng)));
        }
        return f;
    };

    Report rep;
    FourierPolynomial f = random_series(), g = random_series();
    FourierPolynomial fg = star_fourier(f, g, cfg.theta);
    for (int s = 0; s < z_samples; ++s) {
        CVec z = random_polydisc_point(n, rng);
        cplx lhs = fg.evaluate(z);
        cplx rhs = moyal_oracle(f, g, z, cfg);
        rep.record(std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300}));
    }
    rep.finalize(tol);
    return rep;
}

Report verify_plane_wave_phase(int samples, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    const int n = 2;
    SkewMatrix theta = SkewMatrix::theta12(0.3);
    Report rep;
    for (int s = 0; s < samples; ++s) {
        FourierPolynomial::Freq a(n), b(n);
        RVec av(n), bv(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<std::int64_t>(unif(rng) * 11.0) - 5;
            b[i] = static_cast<std::int64_t>(unif(rng) * 11.0) - 5;
            av[i] = static_cast<double>(a[i]);
            bv[i] = static_cast<double>(b[i]);
        }
        FourierPolynomial fg = star_fourier(FourierPolynomial::plane_wave(n, a),
                                            FourierPolynomial::plane_wave(n, b), theta);
        FourierPolynomial gf = star_fourier(FourierPolynomial::plane_wave(n, b),
                                            FourierPolynomial::plane_wave(n, a), theta);
        FourierPolynomial::Freq sum(n);
        for (int i = 0; i < n; ++i) sum[i] = a[i] + b[i];
        cplx c1 = fg.terms().at(sum), c2 = gf.terms().at(sum);
        cplx expected = std::exp(cplx(0.0, 2.0 * M_PI) * av.dot(theta.mat() * bv));
        rep.record(std::abs(c1 / c2 - expected));
        rep.record(std::abs(c1 - std::exp(cplx(0.0, M_PI) * av.dot(theta.mat() * bv))));
    }
    rep.finalize(tol);
    return rep;
}

Report verify_mirror_equality(const IntSymMatrix& a_a, const IntSymMatrix& a_b,
                              const IntSymMatrix& a_c, double tol) {
    LabelTriple triple(a_a, a_b, a_c, SkewMatrix(RMat::Zero(a_a.n(), a_a.n())));
    StructureTensor tensor = structure_tensor(triple, 1e-13);
    Report rep;
    for (std::size_t im = 0; im < tensor.mu_reps.size(); ++im)
        for (std::size_t in = 0; in < tensor.nu_reps.size(); ++in)
            for (std::size_t ir = 0; ir < tensor.rho_reps.size(); ++ir) {
                double mirror = c_mirror(a_a, a_b, a_c, tensor.mu_reps[im], tensor.nu_reps[in],
                                         tensor.rho_reps[ir], 1e-13);
                cplx comm = tensor.at(static_cast<int>(im), static_cast<int>(in),
                                      static_cast<int>(ir));
                double denom = std::max(std::abs(comm), std::abs(mirror));
                rep.record(std::abs(comm - cplx(mirror)) / std::max(denom, 1e-300));
            }
    rep.finalize(tol);
    return rep;
}

namespace {

/// Independent commutative oracle: plain real arithmetic, no complex factor.
double c_comm_oracle(const IntSymMatrix& a_ab, const IntSymMatrix& a_bc, const IntSymMatrix& a_ac,
                     const CosetIndex& mu, const CosetIndex& nu, const CosetIndex& rho,
                     double tol) {
    const int n = a_ab.n();
    RMat ab_inv = rat_to_double(a_ab.inverse_rational());
    RMat bc_inv = rat_to_double(a_bc.inverse_rational());
    RMat q = ab_inv + bc_inv;
    Eigen::SelfAdjointEigenSolver<RMat> es(q);
    int radius = certify_radius(n, M_PI * 0.9 * es.eigenvalues().minCoeff(), 0.5, 1.0, tol);
    RVec u0 = a_bc.to_double() * rat_to_double(a_ac.inverse_rational()) * rho.rep().cast<double>();

    double opnorm = bc_inv.cwiseAbs().rowwise().sum().maxCoeff();
    RVec kc = bc_inv * (u0 - nu.rep().cast<double>());
    IVec kc_i(n);
    for (int i = 0; i < n; ++i) kc_i[i] = static_cast<std::int64_t>(std::llround(kc[i]));
    int k_radius = static_cast<int>(std::ceil((radius + 1.0) * opnorm)) + 1;

    double acc = 0.0;
    for_each_in_box(kc_i, k_radius, [&](const IVec& k) {
        IVec u = nu.rep() + IVec(a_bc.mat() * k);
        if (!delta_mod(a_ab, mu.rep(), IVec(rho.rep() - u))) return;
        RVec d = u.cast<double>() - u0;
        acc += std::exp(-M_PI * d.dot(q * d));
    });
    return acc;
}

}  // namespace

Report verify_nc_reduction(const IntSymMatrix& a_a, const IntSymMatrix& a_b,
                           const IntSymMatrix& a_c, double tol) {
    const int n = a_a.n();
    LabelTriple triple(a_a, a_b, a_c, SkewMatrix(RMat::Zero(n, n)));
    StructureTensor tensor = structure_tensor(triple, 1e-14);
    Report rep;
    for (std::size_t im = 0; im < tensor.mu_reps.size(); ++im)
        for (std::size_t in = 0; in < tensor.nu_reps.size(); ++in)
            for (std::size_t ir = 0; ir < tensor.rho_reps.size(); ++ir) {
                double oracle = c_comm_oracle(triple.ab(), triple.bc(), triple.ac(),
                                              tensor.mu_reps[im], tensor.nu_reps[in],
                                              tensor.rho_reps[ir], 1e-14);
                rep.record(std::abs(tensor.at(static_cast<int>(im), static_cast<int>(in),
                                              static_cast<int>(ir)) -
                                    cplx(oracle)));
            }
    rep.finalize(tol);
    return rep;
}

Report verify_lemma23(int pair_samples, int x_samples, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    Report rep;
    for (int t = 0; t < pair_samples; ++t) {
        int n = 1 + static_cast<int>(unif(rng) * 2.0);
        IntSymMatrix a_a = random_sym_int(n, 2, rng);
        IntSymMatrix a_ab = random_pd_int(n, 2, rng);
        IntSymMatrix a_bc = random_pd_int(n, 2, rng);
        IntSymMatrix a_b = a_a + a_ab;
        IntSymMatrix a_c = a_b + a_bc;
        IntSymMatrix a_ac = a_c - a_a;
        if (a_ac.det() == 0) continue;

        auto mu_reps = coset_representatives(a_ab);
        auto nu_reps = coset_representatives(a_bc);
        CosetIndex mu = mu_reps[static_cast<std::size_t>(unif(rng) * mu_reps.size())];
        CosetIndex nu = nu_reps[static_cast<std::size_t>(unif(rng) * nu_reps.size())];

        SchwartzElement xi(a_ab), eta(a_bc);
        xi.add_atom(mu, random_atom(n, rng));
        eta.add_atom(nu, random_atom(n, rng));
        SchwartzElement prod = tensor_m(xi, eta, a_a, a_b, a_c, 1e-13);

        for (int s = 0; s < x_samples; ++s) {
            CVec x = random_vec(n, 0.5, rng).cast<cplx>();
            cplx lhs = t_map(a_ab, mu, xi, x, 1e-13) * t_map(a_bc, nu, eta, x, 1e-13);
            cplx rhs{0.0, 0.0};
            for (const auto& rho : prod.reps()) rhs += t_map(a_ac, rho, prod, x, 1e-13);
            rep.record(std::abs(lhs - rhs));
        }
    }
    rep.finalize(tol);
    return rep;
}

Report verify_dbar(const std::vector<IntSymMatrix>& differences, int samples, double h, double tol,
                   std::uint64_t seed) {
    Report rep;
    for (const auto& a_ab : differences) {
        IntSymMatrix zero = IntSymMatrix(IMat(IMat::Zero(a_ab.n(), a_ab.n())));
        for (const auto& mu : coset_representatives(a_ab)) {
            Report one = dbar_kernel_check(zero, a_ab, mu, samples, h, tol, seed);
            rep.record(one.max_err);
            rep.checks += one.checks - 1;
        }
    }
    rep.finalize(tol);
    return rep;
}

Report verify_curvature(const IntSymMatrix& a_ab, int elements, int x_samples, std::uint64_t seed,
                        double h, double tol) {
    const int n = a_ab.n();
    std::mt19937_64 rng(seed);
    RMat f_mat = RMat::Zero(2 * n, 2 * n);
    f_mat.topRightCorner(n, n) = a_ab.to_double();
    f_mat.bottomLeftCorner(n, n) = -a_ab.to_double();

    Report rep;
    for (int e = 0; e < elements; ++e) {
        SchwartzElement xi = random_element(a_ab, rng);
        CosetFn base = as_fn(xi);
        for (int s = 0; s < x_samples; ++s) {
            RVec x = random_vec(n, 0.5, rng);
            int pos = static_cast<int>(unif(rng) * xi.coset_count());
            cplx val = base(x, pos);
            for (int i = 1; i <= 2 * n; ++i)
                for (int j = i + 1; j <= 2 * n; ++j) {
                    CosetFn ij = connection_fn(a_ab, i, connection_fn(a_ab, j, base, h), h);
                    CosetFn ji = connection_fn(a_ab, j, connection_fn(a_ab, i, base, h), h);
                    cplx comm = cplx(0.0, 1.0) / (2.0 * M_PI) * (ij(x, pos) - ji(x, pos));
                    rep.record(std::abs(comm - f_mat(i - 1, j - 1) * val) /
                               std::max(std::abs(val), 1e-300));
                }
        }
    }
    rep.finalize(tol);
    return rep;
}

Report verify_leibniz(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                      int pairs, int x_samples, std::uint64_t seed, double h, double tol) {
    const int n = a_a.n();
    IntSymMatrix a_ab = a_b - a_a, a_bc = a_c - a_b, a_ac = a_c - a_a;
    std::mt19937_64 rng(seed);
    Report rep;
    const int box_radius = 7;
    for (int p = 0; p < pairs; ++p) {
        SchwartzElement xi = random_element(a_ab, rng);
        SchwartzElement eta = random_element(a_bc, rng);
        SchwartzElement prod = tensor_m(xi, eta, a_a, a_b, a_c, 1e-13);
        for (int s = 0; s < x_samples; ++s) {
            RVec x = random_vec(n, 0.5, rng);
            for (const auto& rho : coset_representatives(a_ac)) {
                for (int i = 1; i <= 2 * n; ++i) {
                    cplx lhs = connection_apply({a_ac, i}, prod, x, rho, h);
                    cplx rhs = tensor_eval_generic(connection_fn(a_ab, i, as_fn(xi), h),
                                                   as_fn(eta), a_a, a_b, a_c, x, rho, box_radius) +
                               tensor_eval_generic(as_fn(xi),
                                                   connection_fn(a_bc, i, as_fn(eta), h), a_a, a_b,
                                                   a_c, x, rho, box_radius);
                    rep.record(std::abs(lhs - rhs));
                }
            }
        }
    }
    rep.finalize(tol);
    return rep;
}

Report verify_twisted(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                      int pairs, int samples, std::uint64_t seed, double tol) {
    const int n = a_a.n();
    IntSymMatrix a_ab = a_b - a_a, a_bc = a_c - a_b;
    std::mt19937_64 rng(seed);
    Report rep;
    for (int p = 0; p < pairs; ++p) {
        SchwartzElement xi = random_element(a_ab, rng);
        SchwartzElement eta = random_element(a_bc, rng);
        SchwartzElement prod = tensor_m(xi, eta, a_a, a_b, a_c, 1e-13);
        for (int s = 0; s < samples; ++s) {
            RVec x = random_vec(n, 0.5, rng);
            RVec y = random_vec(n, 0.5, rng);
            cplx lhs = twisted_section_eval(xi, x, y, 1e-13) * twisted_section_eval(eta, x, y, 1e-13);
            cplx rhs = twisted_section_eval(prod, x, y, 1e-13);
            rep.record(std::abs(lhs - rhs));
        }
    }
    rep.finalize(tol);
    return rep;
}

}  // namespace nct
