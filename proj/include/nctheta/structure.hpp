#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nctheta/heisenberg.hpp"
#include "nctheta/report.hpp"
#include "nctheta/star.hpp"
#include "nctheta/theta.hpp"

namespace nct {

/// Three labels plus the deformation parameter; the hypotheses of the
/// product formula (positive-definite consecutive differences, pairwise
/// compatibility for theta != 0) are checked on construction.
struct LabelTriple {
    IntSymMatrix a_a, a_b, a_c;
    SkewMatrix theta;

    LabelTriple(IntSymMatrix a, IntSymMatrix b, IntSymMatrix c, SkewMatrix th);

    int n() const { return a_a.n(); }
    IntSymMatrix ab() const { return a_b - a_a; }
    IntSymMatrix bc() const { return a_c - a_b; }
    IntSymMatrix ac() const { return a_c - a_a; }
    bool commutative() const { return theta.is_zero(); }
};

/// Structure constant of the (deformed) addition formula: the u-sum over
/// the two congruence classes with Gaussian weight
///   exp(-pi (u - A_bc A_ac^{-1} rho)^T (A_ab^{-1} + A_bc^{-1})(1 + i A_b theta)^{-1} (...)).
/// The commutative constant is the theta = 0 case of the same sum.
cplx c_structure(const LabelTriple& triple, const CosetIndex& mu, const CosetIndex& nu,
                 const CosetIndex& rho, double tol = 1e-12);

/// theta = 0 entry point (asserts the triple is commutative).
cplx c_comm(const LabelTriple& triple, const CosetIndex& mu, const CosetIndex& nu,
            const CosetIndex& rho, double tol = 1e-12);

/// Full tensor over all canonical (mu, nu, rho), flat index
/// (i_mu * N_nu + i_nu) * N_rho + i_rho.
struct StructureTensor {
    LabelTriple triple;
    std::vector<CosetIndex> mu_reps, nu_reps, rho_reps;
    std::vector<cplx> values;

    cplx at(std::size_t imu, std::size_t inu, std::size_t irho) const {
        return values[(imu * nu_reps.size() + inu) * rho_reps.size() + irho];
    }
};

enum class Execution { serial, parallel };

/// Tabulate every entry. The parallel path splits entries across OpenMP
/// threads; each entry is computed by the same deterministic serial kernel,
/// so both paths produce bit-identical tensors.
StructureTensor structure_tensor(const LabelTriple& triple, double tol = 1e-12,
                                 Execution exec = Execution::parallel);

/// Hom-space datum for a label pair.
struct HomSpace {
    int dimension = 0;
    std::vector<CosetIndex> basis;  // empty when dimension is 0 or 1
};

HomSpace hom_space(const IntSymMatrix& a_a, const IntSymMatrix& a_b);

/// Samples the product formula at seeded random points of the unit polydisc:
/// LHS is the pointwise product (theta = 0) or the star product of the
/// truncated series; RHS is sum_rho C * basis. Reports max relative error.
Report verify_addition(const LabelTriple& triple, int samples, std::uint64_t seed, double tol);

/// Contraction identity of the structure tensors over a label quadruple.
/// Reports vacuous when the quadruple fails the positivity hypotheses.
Report check_associativity(const IntSymMatrix& a_a, const IntSymMatrix& a_b,
                           const IntSymMatrix& a_c, const IntSymMatrix& a_d,
                           const SkewMatrix& theta, double tol);

/// Seeded point in the closed unit polydisc (each coordinate in the unit disc).
CVec random_polydisc_point(int n, std::mt19937_64& rng);

}  // namespace nct
