#include "nctheta/heisenberg.hpp"

#include <cmath>
#include <random>

namespace nct {

cplx GaussianAtom::eval(const CVec& x) const {
    CVec d = x - s;
    cplx quad = (d.transpose() * (m * d)).value();
    cplx lin = (k.transpose() * x).value();
    return amp * std::exp(-M_PI * quad + cplx(0.0, 2.0 * M_PI) * lin);
}

double GaussianAtom::log_abs(const CVec& x) const {
    if (amp == cplx{0.0, 0.0}) return -std::numeric_limits<double>::infinity();
    CVec d = x - s;
    cplx quad = (d.transpose() * (m * d)).value();
    cplx lin = (k.transpose() * x).value();
    return std::log(std::abs(amp)) - M_PI * quad.real() - 2.0 * M_PI * lin.imag();
}

double GaussianAtom::log_sup() const {
    if (amp == cplx{0.0, 0.0}) return -std::numeric_limits<double>::infinity();
    auto f = [this](const RVec& x) { return log_abs(x); };
    RealQuadratic q = fit_quadratic(n(), f);
    return analyze_concave(q).maxval;
}

GaussianAtom atom_product(const GaussianAtom& a, const RVec& alpha, const GaussianAtom& b,
                          const RVec& beta) {
    const int n = a.n();
    // Fold the argument shifts into centers and phases first.
    CVec s1 = a.s - alpha.cast<cplx>();
    CVec s2 = b.s - beta.cast<cplx>();
    cplx amp1 = a.amp * std::exp(cplx(0.0, 2.0 * M_PI) * (a.k.transpose() * alpha.cast<cplx>()).value());
    cplx amp2 = b.amp * std::exp(cplx(0.0, 2.0 * M_PI) * (b.k.transpose() * beta.cast<cplx>()).value());

    GaussianAtom out;
    out.m = a.m + b.m;
    CVec rhs = a.m * s1 + b.m * s2;
    out.s = out.m.fullPivLu().solve(rhs);
    cplx r = (s1.transpose() * (a.m * s1)).value() + (s2.transpose() * (b.m * s2)).value() -
             (out.s.transpose() * (out.m * out.s)).value();
    out.k = a.k + b.k;
    out.amp = amp1 * amp2 * std::exp(-M_PI * r);
    (void)n;
    return out;
}

SchwartzElement::SchwartzElement(IntSymMatrix modulus)
    : modulus_(std::move(modulus)), reps_(coset_representatives(modulus_)), atoms_(reps_.size()) {}

void SchwartzElement::add_atom(const CosetIndex& coset, GaussianAtom atom) {
    if (coset.modulus() != modulus_) throw index_modulus_mismatch();
    add_atom(coset_position(modulus_, coset.rep()), std::move(atom));
}

void SchwartzElement::add_atom(int pos, GaussianAtom atom) {
    atoms_.at(pos).push_back(std::move(atom));
}

cplx SchwartzElement::eval(const RVec& x, const CosetIndex& mu) const {
    if (mu.modulus() != modulus_) throw index_modulus_mismatch();
    return eval(x, coset_position(modulus_, mu.rep()));
}

cplx SchwartzElement::eval(const RVec& x, int pos) const {
    cplx v{0.0, 0.0};
    for (const auto& a : atoms_.at(pos)) v += a.eval(x);
    return v;
}

namespace {

IVec round_vec(const RVec& v) {
    IVec r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = static_cast<std::int64_t>(std::llround(v[i]));
    return r;
}

}  // namespace

cplx t_map(const IntSymMatrix& a_ab, const CosetIndex& mu, const std::vector<GaussianAtom>& atoms,
           const CVec& x, double tol) {
    if (a_ab.det() == 0) throw singular_modulus();
    if (mu.modulus() != a_ab) throw index_modulus_mismatch();
    const int n = a_ab.n();
    CVec base = x - rat_to_double(a_ab.solve_rational(mu.rep())).cast<cplx>();
    double tol_atom = tol / std::max<std::size_t>(atoms.size(), 1);
    KahanSum acc;
    for (const auto& atom : atoms) {
        if (atom.amp == cplx{0.0, 0.0}) continue;
        auto logabs = [&](const RVec& w) { return atom.log_abs(CVec(base + w.cast<cplx>())); };
        QuadraticPeak peak = analyze_concave(fit_quadratic(n, logabs));
        int radius = certify_radius(n, peak.decay, 0.5, std::exp(peak.maxval), tol_atom);
        for_each_in_box(round_vec(peak.argmax), radius, [&](const IVec& w) {
            acc.add(atom.eval(CVec(base + w.cast<double>().cast<cplx>())));
        });
    }
    return acc.value();
}

cplx t_map(const IntSymMatrix& a_ab, const CosetIndex& mu, const SchwartzElement& xi,
           const CVec& x, double tol) {
    if (xi.modulus() != a_ab) throw index_modulus_mismatch();
    return t_map(a_ab, mu, xi.atoms_at(coset_position(a_ab, mu.rep())), x, tol);
}

SchwartzElement theta_vector(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const CosetIndex& mu) {
    IntSymMatrix a_ab = a_b - a_a;
    if (!is_positive_definite(a_ab)) throw not_positive_definite("A_ab must be positive definite");
    SchwartzElement e(a_ab);
    GaussianAtom atom;
    atom.m = a_ab.to_complex();
    atom.s = CVec::Zero(a_ab.n());
    atom.k = CVec::Zero(a_ab.n());
    atom.amp = {1.0, 0.0};
    e.add_atom(mu, std::move(atom));
    return e;
}

namespace {

SchwartzElement act_generator(int i, const SchwartzElement& xi) {
    const int n = xi.n();
    if (i < 1 || i > 2 * n) throw dimension_mismatch("generator index out of range");
    const IntSymMatrix& a = xi.modulus();
    SchwartzElement out(a);
    if (i <= n) {
        // multiply by exp(2 pi i (x_i + (A^{-1} mu)_i))
        for (int pos = 0; pos < xi.coset_count(); ++pos) {
            RVec ainv_mu = rat_to_double(a.solve_rational(xi.reps()[pos].rep()));
            cplx phase = std::exp(cplx(0.0, 2.0 * M_PI * ainv_mu[i - 1]));
            for (GaussianAtom atom : xi.atoms_at(pos)) {
                atom.k[i - 1] += 1.0;
                atom.amp *= phase;
                out.add_atom(pos, std::move(atom));
            }
        }
    } else {
        // (U_{n+j} xi)(x; mu) = xi(x + A^{-1} e_j; mu - e_j)
        int j = i - n - 1;
        IVec ej = IVec::Zero(n);
        ej[j] = 1;
        RatMat ainv = a.inverse_rational();
        RVec d(n);
        for (int r = 0; r < n; ++r) d[r] = ainv(r, j).to_double();
        for (int pos = 0; pos < xi.coset_count(); ++pos) {
            int src = coset_position(a, IVec(xi.reps()[pos].rep() - ej));
            for (GaussianAtom atom : xi.atoms_at(src)) {
                cplx phase = std::exp(cplx(0.0, 2.0 * M_PI) * (atom.k.transpose() * d.cast<cplx>()).value());
                atom.s -= d.cast<cplx>();
                atom.amp *= phase;
                out.add_atom(pos, std::move(atom));
            }
        }
    }
    return out;
}

}  // namespace

SchwartzElement act_U(int i, const SchwartzElement& xi) { return act_generator(i, xi); }
SchwartzElement act_Z(int i, const SchwartzElement& xi) { return act_generator(i, xi); }

cplx connection_apply(const ConnectionSpec& spec, const SchwartzElement& xi, const RVec& x,
                      const CosetIndex& mu, double h) {
    const int n = spec.a.n();
    int pos = coset_position(xi.modulus(), mu.rep());
    if (spec.i >= 1 && spec.i <= n) {
        RVec xp = x, xm = x;
        xp[spec.i - 1] += h;
        xm[spec.i - 1] -= h;
        return (xi.eval(xp, pos) - xi.eval(xm, pos)) / (2.0 * h);
    }
    if (spec.i > n && spec.i <= 2 * n) {
        RVec ax = spec.a.to_double() * x;
        return cplx(0.0, -2.0 * M_PI) * ax[spec.i - n - 1] * xi.eval(x, pos);
    }
    throw dimension_mismatch("connection index out of range");
}

CosetFn as_fn(const SchwartzElement& xi) {
    return [xi](const RVec& x, int pos) { return xi.eval(x, pos); };
}

CosetFn connection_fn(const IntSymMatrix& a, int i, CosetFn f, double h) {
    const int n = a.n();
    if (i >= 1 && i <= n) {
        return [f = std::move(f), i, h](const RVec& x, int pos) {
            RVec xp = x, xm = x;
            xp[i - 1] += h;
            xm[i - 1] -= h;
            return (f(xp, pos) - f(xm, pos)) / (2.0 * h);
        };
    }
    if (i > n && i <= 2 * n) {
        RMat ad = a.to_double();
        return [f = std::move(f), ad, i, n](const RVec& x, int pos) {
            RVec ax = ad * x;
            return cplx(0.0, -2.0 * M_PI) * ax[i - n - 1] * f(x, pos);
        };
    }
    throw dimension_mismatch("connection index out of range");
}

Report dbar_kernel_check(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const CosetIndex& mu,
                         int samples, double h, double tol, std::uint64_t seed) {
    IntSymMatrix a_ab = a_b - a_a;
    SchwartzElement e = theta_vector(a_a, a_b, mu);
    const int n = a_ab.n();
    std::mt19937_64 rng(seed);
    auto unif = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    Report rep;
    for (int s = 0; s < samples; ++s) {
        RVec x(n);
        for (int i = 0; i < n; ++i) x[i] = unif();
        cplx val = e.eval(x, mu);
        for (int i = 1; i <= n; ++i) {
            cplx r = connection_apply({a_ab, i}, e, x, mu, h) +
                     cplx(0.0, 1.0) * connection_apply({a_ab, n + i}, e, x, mu, h);
            rep.record(std::abs(r) / std::max(std::abs(val), 1e-300));
        }
    }
    rep.finalize(tol);
    return rep;
}

SchwartzElement tensor_m(const SchwartzElement& xi_ab, const SchwartzElement& xi_bc,
                         const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                         double tol) {
    IntSymMatrix a_ab = a_b - a_a;
    IntSymMatrix a_bc = a_c - a_b;
    IntSymMatrix a_ac = a_c - a_a;
    if (xi_ab.modulus() != a_ab || xi_bc.modulus() != a_bc) throw index_modulus_mismatch();
    if (a_ab.det() == 0 || a_bc.det() == 0 || a_ac.det() == 0) throw singular_modulus();
    const int n = a_ab.n();

    RMat ab_inv = rat_to_double(a_ab.inverse_rational());
    RMat bc_inv = rat_to_double(a_bc.inverse_rational());
    RMat bc_acinv = a_bc.to_double() * rat_to_double(a_ac.inverse_rational());

    SchwartzElement out(a_ac);
    std::size_t pair_count = 0;
    for (int pa = 0; pa < xi_ab.coset_count(); ++pa) pair_count += xi_ab.atoms_at(pa).size();
    std::size_t pair_count2 = 0;
    for (int pb = 0; pb < xi_bc.coset_count(); ++pb) pair_count2 += xi_bc.atoms_at(pb).size();
    double tol_pair = tol / std::max<double>(1.0, static_cast<double>(out.coset_count()) *
                                                      pair_count * pair_count2);

    for (int pr = 0; pr < out.coset_count(); ++pr) {
        const IVec& rho = out.reps()[pr].rep();
        RVec q = bc_acinv * rho.cast<double>();
        for (int pa = 0; pa < xi_ab.coset_count(); ++pa) {
            for (const GaussianAtom& g1 : xi_ab.atoms_at(pa)) {
                if (g1.amp == cplx{0.0, 0.0}) continue;
                for (int pb = 0; pb < xi_bc.coset_count(); ++pb) {
                    for (const GaussianAtom& g2 : xi_bc.atoms_at(pb)) {
                        if (g2.amp == cplx{0.0, 0.0}) continue;
                        // log-sup of the product atom is an exact quadratic in
                        // u. Work with log-magnitudes directly (the product
                        // amplitude itself can underflow at the probe points).
                        auto prof = [&](const RVec& u) {
                            RVec du = u - q;
                            RVec alpha = ab_inv * du, beta = bc_inv * du;
                            auto sum = [&](const RVec& x) {
                                return g1.log_abs(RVec(x + alpha)) + g2.log_abs(RVec(x - beta));
                            };
                            return analyze_concave(fit_quadratic(n, sum)).maxval;
                        };
                        QuadraticPeak peak = analyze_concave(fit_quadratic(n, prof));
                        int radius = certify_radius(n, peak.decay, 0.5, std::exp(peak.maxval), tol_pair);
                        for_each_in_box(round_vec(peak.argmax), radius, [&](const IVec& u) {
                            if (coset_position(a_ab, IVec(rho - u)) != pa) return;
                            if (coset_position(a_bc, u) != pb) return;
                            RVec du = (u.cast<double>() - q);
                            out.add_atom(pr, atom_product(g1, RVec(ab_inv * du), g2, RVec(-bc_inv * du)));
                        });
                    }
                }
            }
        }
    }
    return out;
}

cplx tensor_eval_generic(const CosetFn& f_ab, const CosetFn& g_bc, const IntSymMatrix& a_a,
                         const IntSymMatrix& a_b, const IntSymMatrix& a_c, const RVec& x,
                         const CosetIndex& rho, int box_radius) {
    IntSymMatrix a_ab = a_b - a_a;
    IntSymMatrix a_bc = a_c - a_b;
    IntSymMatrix a_ac = a_c - a_a;
    RMat ab_inv = rat_to_double(a_ab.inverse_rational());
    RMat bc_inv = rat_to_double(a_bc.inverse_rational());
    RVec q = a_bc.to_double() * rat_to_double(a_ac.inverse_rational()) * rho.rep().cast<double>();
    KahanSum acc;
    for_each_in_box(round_vec(q), box_radius, [&](const IVec& u) {
        int pa = coset_position(a_ab, IVec(rho.rep() - u));
        int pb = coset_position(a_bc, u);
        RVec du = u.cast<double>() - q;
        acc.add(f_ab(RVec(x + ab_inv * du), pa) * g_bc(RVec(x - bc_inv * du), pb));
    });
    return acc.value();
}

cplx twisted_section_eval(const SchwartzElement& xi_ab, const RVec& x, const RVec& y, double tol) {
    const IntSymMatrix& a = xi_ab.modulus();
    const int n = a.n();
    RMat ad = a.to_double();
    std::size_t atom_total = 0;
    for (int p = 0; p < xi_ab.coset_count(); ++p) atom_total += xi_ab.atoms_at(p).size();
    double tol_atom = tol / std::max<std::size_t>(atom_total, 1);

    KahanSum acc;
    for (int p = 0; p < xi_ab.coset_count(); ++p) {
        const IVec& mu = xi_ab.reps()[p].rep();
        RVec c = rat_to_double(a.solve_rational(mu));
        for (const auto& atom : xi_ab.atoms_at(p)) {
            if (atom.amp == cplx{0.0, 0.0}) continue;
            auto logabs = [&](const RVec& w) { return atom.log_abs(RVec(x + w - c)); };
            QuadraticPeak peak = analyze_concave(fit_quadratic(n, logabs));
            int radius = certify_radius(n, peak.decay, 0.5, std::exp(peak.maxval), tol_atom);
            for_each_in_box(round_vec(peak.argmax), radius, [&](const IVec& w) {
                RVec xw = x + w.cast<double>();
                double phase = y.dot(-(ad * xw) + mu.cast<double>());
                acc.add(std::exp(cplx(0.0, 2.0 * M_PI * phase)) * atom.eval(RVec(xw - c)));
            });
        }
    }
    return acc.value();
}

}  // namespace nct
