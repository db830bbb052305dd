#pragma once

#include <functional>
#include <vector>

#include "nctheta/lattice.hpp"
#include "nctheta/linalg.hpp"
#include "nctheta/report.hpp"

namespace nct {

/// Shifted modulated Gaussian amp * exp(-pi (x-s)^T M (x-s) + 2 pi i k.x).
/// Re M positive definite, so the atom is Schwartz along real directions.
struct GaussianAtom {
    CMat m;
    CVec s;
    CVec k;
    cplx amp{1.0, 0.0};

    int n() const { return static_cast<int>(m.rows()); }
    cplx eval(const CVec& x) const;
    cplx eval(const RVec& x) const { return eval(CVec(x.cast<cplx>())); }

    /// log|eval(x)| computed without the exp/log round trip, so it stays
    /// finite where eval itself would underflow to zero.
    double log_abs(const CVec& x) const;
    double log_abs(const RVec& x) const { return log_abs(CVec(x.cast<cplx>())); }

    /// log of the supremum of |eval| over real arguments.
    double log_sup() const;
};

/// Product of two argument-shifted atoms, again a single atom:
///   a(x + alpha) * b(x + beta).
GaussianAtom atom_product(const GaussianAtom& a, const RVec& alpha, const GaussianAtom& b,
                          const RVec& beta);

/// Finite Gaussian-atom model of S(R^n x (Z^n / A Z^n)). Atom lists are
/// indexed parallel to coset_representatives(modulus).
class SchwartzElement {
  public:
    SchwartzElement(IntSymMatrix modulus);

    int n() const { return modulus_.n(); }
    const IntSymMatrix& modulus() const { return modulus_; }
    int coset_count() const { return static_cast<int>(atoms_.size()); }
    const std::vector<CosetIndex>& reps() const { return reps_; }

    const std::vector<GaussianAtom>& atoms_at(int pos) const { return atoms_.at(pos); }
    void add_atom(const CosetIndex& coset, GaussianAtom atom);
    void add_atom(int pos, GaussianAtom atom);

    cplx eval(const RVec& x, const CosetIndex& mu) const;
    cplx eval(const RVec& x, int pos) const;

  private:
    IntSymMatrix modulus_;
    std::vector<CosetIndex> reps_;
    std::vector<std::vector<GaussianAtom>> atoms_;
};

/// Periodization: sum_w xi(x + w - A_ab^{-1} mu) over a certified box.
cplx t_map(const IntSymMatrix& a_ab, const CosetIndex& mu, const std::vector<GaussianAtom>& atoms,
           const CVec& x, double tol = 1e-12);
cplx t_map(const IntSymMatrix& a_ab, const CosetIndex& mu, const SchwartzElement& xi,
           const CVec& x, double tol = 1e-12);

/// The holomorphic basis element: exp(-pi x^T A_ab x) placed at coset mu.
SchwartzElement theta_vector(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const CosetIndex& mu);

/// Right action of the generator U_i (1-based, i in 1..2n).
SchwartzElement act_U(int i, const SchwartzElement& xi);
/// Left action of the endomorphism generator Z_i; same formulas here.
SchwartzElement act_Z(int i, const SchwartzElement& xi);

/// Constant curvature connection datum for one direction.
struct ConnectionSpec {
    IntSymMatrix a;  // the curvature matrix (A_ab for Hom spaces)
    int i = 1;       // 1..2n
};

/// (nabla_i xi)(x; mu): central finite difference for i <= n, exact
/// multiplication by -2 pi i (A x)_{i-n} for i > n.
cplx connection_apply(const ConnectionSpec& spec, const SchwartzElement& xi, const RVec& x,
                      const CosetIndex& mu, double h = 1e-5);

/// Coset-indexed evaluation closure, for operator-composition checks.
using CosetFn = std::function<cplx(const RVec& x, int pos)>;

CosetFn as_fn(const SchwartzElement& xi);
/// nabla_i lifted to closures (finite differences / multiplication).
CosetFn connection_fn(const IntSymMatrix& a, int i, CosetFn f, double h);

/// Checks that every dbar_i annihilates the theta vector at sampled points.
Report dbar_kernel_check(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const CosetIndex& mu,
                         int samples, double h, double tol, std::uint64_t seed = 1);

/// Tensor product m: Hom(E_a,E_b) x Hom(E_b,E_c) -> Hom(E_a,E_c),
/// u-sum over a certified box, product atoms in closed form.
SchwartzElement tensor_m(const SchwartzElement& xi_ab, const SchwartzElement& xi_bc,
                         const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                         double tol = 1e-12);

/// The same u-sum applied to arbitrary closures with a caller-chosen box;
/// used to verify the Leibniz rule without extending the atom algebra.
cplx tensor_eval_generic(const CosetFn& f_ab, const CosetFn& g_bc, const IntSymMatrix& a_a,
                         const IntSymMatrix& a_b, const IntSymMatrix& a_c, const RVec& x,
                         const CosetIndex& rho, int box_radius);

/// Twisted-section value
///   sum_w sum_mu exp(2 pi i y^T(-A_ab(x+w) + mu)) xi^mu(x + w - A_ab^{-1} mu).
cplx twisted_section_eval(const SchwartzElement& xi_ab, const RVec& x, const RVec& y,
                          double tol = 1e-12);

}  // namespace nct
