#pragma once

#include <vector>

#include "nctheta/linalg.hpp"

namespace nct {
namespace presets {

/// The determinant -4 diagonal family used throughout the examples.
inline IntSymMatrix sec5_a1() { return IntSymMatrix::diag({1, -4}); }
inline IntSymMatrix sec5_a2() { return IntSymMatrix::diag({2, -2}); }
inline IntSymMatrix sec5_a3() { return IntSymMatrix::diag({4, -1}); }

inline std::vector<IntSymMatrix> sec5_labels() { return {sec5_a1(), sec5_a2(), sec5_a3()}; }

/// A fourth label extending the family to an associativity quadruple:
/// determinant -4 (so the pairwise compatibility survives for every theta)
/// and positive-definite difference from sec5_a3.
inline IntSymMatrix sec5_a4() {
    IMat m(2, 2);
    m << 9, 2, 2, 0;
    return IntSymMatrix(m);
}

/// One-dimensional triple with moduli 1, 2, 3.
inline std::vector<IntSymMatrix> line_triple() {
    return {IntSymMatrix::scalar(0), IntSymMatrix::scalar(1), IntSymMatrix::scalar(3)};
}

/// One-dimensional associativity quadruple.
inline std::vector<IntSymMatrix> line_quadruple() {
    return {IntSymMatrix::scalar(0), IntSymMatrix::scalar(1), IntSymMatrix::scalar(2),
            IntSymMatrix::scalar(4)};
}

}  // namespace presets
}  // namespace nct
