#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nctheta/mirror.hpp"
#include "nctheta/structure.hpp"

namespace nct {

/// Gaussian-sum basis function against the characteristic-form lattice sum,
/// on random valid label pairs with n <= 2 and entries <= 5. Absolute error.
Report verify_poisson(int matrix_samples, int z_samples, std::uint64_t seed, double tol);

/// Termwise star product against the truncated bidifferential oracle on
/// random finite Fourier series. Relative error at sampled points.
Report verify_star_oracle(int term_count, int z_samples, std::uint64_t seed, double tol);

/// Commutation phase of plane waves under the star product vs exp(2 pi i a^T theta b).
Report verify_plane_wave_phase(int samples, std::uint64_t seed, double tol);

/// Entrywise comparison of the triangle-area sum with the commutative
/// structure constants over the full index ranges of a triple.
Report verify_mirror_equality(const IntSymMatrix& a_a, const IntSymMatrix& a_b,
                              const IntSymMatrix& a_c, double tol);

/// Entrywise comparison of the deformed constants at theta = 0 (complex code
/// path) with an independent real-arithmetic commutative sum.
Report verify_nc_reduction(const IntSymMatrix& a_a, const IntSymMatrix& a_b,
                           const IntSymMatrix& a_c, double tol);

/// T-map product identity on random Gaussian-atom pairs. Absolute error.
Report verify_lemma23(int pair_samples, int x_samples, std::uint64_t seed, double tol);

/// dbar annihilates every theta vector of each listed positive-definite
/// difference; residual relative to the element value.
Report verify_dbar(const std::vector<IntSymMatrix>& differences, int samples, double h, double tol,
                   std::uint64_t seed);

/// Numerical commutator of the connection reproduces the constant curvature
/// entries on random elements.
Report verify_curvature(const IntSymMatrix& a_ab, int elements, int x_samples, std::uint64_t seed,
                        double h, double tol);

/// Leibniz rule of the connection with respect to the tensor product,
/// checked through finite-difference closures.
Report verify_leibniz(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                      int pairs, int x_samples, std::uint64_t seed, double h, double tol);

/// Pointwise product of twisted sections equals the twisted section of the
/// tensor product. Absolute error.
Report verify_twisted(const IntSymMatrix& a_a, const IntSymMatrix& a_b, const IntSymMatrix& a_c,
                      int pairs, int samples, std::uint64_t seed, double tol);

/// Random Gaussian atom with positive-definite real part, O(1) amplitude,
/// and modest center/frequency, for property sampling.
GaussianAtom random_atom(int n, std::mt19937_64& rng);

/// Element with one random atom on each coset of the modulus.
SchwartzElement random_element(const IntSymMatrix& modulus, std::mt19937_64& rng);

}  // namespace nct
