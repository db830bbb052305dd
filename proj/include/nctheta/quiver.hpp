#pragma once

#include <string>
#include <vector>

#include "nctheta/structure.hpp"

namespace nct {

/// All diagonal 2x2 integer matrices with entries in [-bound, bound] and the
/// requested determinant, sorted lexicographically by (d0, d1).
std::vector<IntSymMatrix> enumerate_diag_symmetric(std::int64_t det_target, std::int64_t bound);

/// g^T A g for unimodular g; preserves the determinant.
IntSymMatrix conjugate(const IntSymMatrix& a, const IMat& g);

/// det A_ab if A_ab is positive definite, 1 if the labels coincide, 0 otherwise.
int hom_dim(const IntSymMatrix& a_a, const IntSymMatrix& a_b);

struct QuiverArrow {
    int from = 0, to = 0;
    int weight = 0;
};

struct Quiver {
    std::vector<IntSymMatrix> nodes;
    std::vector<QuiverArrow> arrows;  // sorted by (from, to)
};

/// Node per label, arrow a -> b with weight hom_dim(a, b) whenever the
/// weight is positive and a != b.
Quiver build_quiver(const std::vector<IntSymMatrix>& labels);

std::string quiver_to_dot(const Quiver& q);
std::string quiver_to_json(const Quiver& q);

}  // namespace nct
