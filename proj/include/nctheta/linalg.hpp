#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "nctheta/errors.hpp"
#include "nctheta/rational.hpp"

namespace nct {

using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

/// Exact determinant by fraction-free (Bareiss) elimination.
std::int64_t det_exact(const IMat& m);

/// Integer adjugate, so that A * adjugate(A) == det(A) * I.
IMat adjugate(const IMat& m);

/// Symmetric integer matrix; the curvature data A_a of the label set.
class IntSymMatrix {
  public:
    IntSymMatrix() = default;
    explicit IntSymMatrix(IMat entries);
    static IntSymMatrix diag(std::initializer_list<std::int64_t> d);
    static IntSymMatrix scalar(std::int64_t v);  // n = 1

    int n() const { return static_cast<int>(m_.rows()); }
    const IMat& mat() const { return m_; }
    std::int64_t operator()(int i, int j) const { return m_(i, j); }

    std::int64_t det() const;
    bool is_zero() const { return m_.isZero(); }
    RMat to_double() const;
    CMat to_complex() const;

    /// Exact inverse over the rationals. Throws singular_modulus.
    RatMat inverse_rational() const;
    /// Exact A^{-1} v over the rationals.
    RatVec solve_rational(const IVec& v) const;

    friend IntSymMatrix operator-(const IntSymMatrix& a, const IntSymMatrix& b);
    friend IntSymMatrix operator+(const IntSymMatrix& a, const IntSymMatrix& b);
    IntSymMatrix operator-() const;
    friend bool operator==(const IntSymMatrix& a, const IntSymMatrix& b) {
        return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
    }
    friend bool operator!=(const IntSymMatrix& a, const IntSymMatrix& b) { return !(a == b); }

  private:
    IMat m_;
};

/// All leading principal minors positive, in exact integer arithmetic.
bool is_positive_definite(const IntSymMatrix& s);

/// Complex symmetric matrix with a declared symmetry tolerance for values
/// that come out of floating-point computation. Strict symmetry is enforced
/// on construction from halves; computed values go through `check_symmetric`.
class ComplexSymMatrix {
  public:
    ComplexSymMatrix() = default;
    explicit ComplexSymMatrix(CMat entries, bool strict = true);

    int n() const { return static_cast<int>(m_.rows()); }
    const CMat& mat() const { return m_; }

    /// max|M - M^t| <= tol_rel * max|M|.
    static bool check_symmetric(const CMat& m, double tol_rel = 1e-12);

  private:
    CMat m_;
};

/// Real skew-symmetric matrix, the noncommutativity parameter.
class SkewMatrix {
  public:
    explicit SkewMatrix(int n) : m_(RMat::Zero(n, n)) {}
    explicit SkewMatrix(RMat entries);
    /// n = 2 with the single free entry theta_{12}.
    static SkewMatrix theta12(double t);

    int n() const { return static_cast<int>(m_.rows()); }
    const RMat& mat() const { return m_; }
    bool is_zero() const { return m_.isZero(0.0); }
    double norm() const { return m_.cwiseAbs().maxCoeff(); }
    SkewMatrix scaled(double t) const { return SkewMatrix(RMat(t * m_)); }

  private:
    RMat m_;
};

/// Smith-form data: U * A * V == D with U, V unimodular and D diagonal
/// with nonnegative entries.
struct SmithForm {
    IMat u, v, d;
    IMat u_inv;  // exact inverse of u
};

SmithForm smith_form(const IMat& a);

/// Element of Z^n / A Z^n held by its canonical representative.
class CosetIndex {
  public:
    CosetIndex() = default;
    CosetIndex(IntSymMatrix modulus, IVec rep) : modulus_(std::move(modulus)), rep_(std::move(rep)) {}

    const IntSymMatrix& modulus() const { return modulus_; }
    const IVec& rep() const { return rep_; }

    friend bool operator==(const CosetIndex& a, const CosetIndex& b) {
        return a.modulus_ == b.modulus_ && a.rep_.size() == b.rep_.size() && a.rep_ == b.rep_;
    }

  private:
    IntSymMatrix modulus_;
    IVec rep_;
};

/// Kronecker delta mod A Z^n: 1 iff rho - mu is in A Z^n. Exact.
int delta_mod(const IntSymMatrix& a, const IVec& mu, const IVec& rho);

/// Canonical representative of v in Z^n / A Z^n (Smith-form residue).
CosetIndex reduce_mod(const IntSymMatrix& a, const IVec& v);

/// All |det A| canonical representatives, in a fixed deterministic order.
std::vector<CosetIndex> coset_representatives(const IntSymMatrix& a);

/// Position of reduce_mod(a, v) inside coset_representatives(a).
int coset_position(const IntSymMatrix& a, const IVec& v);

inline RVec rat_to_double(const RatVec& v) {
    RVec r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = v[i].to_double();
    return r;
}

inline RMat rat_to_double(const RatMat& m) {
    RMat r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_double();
    return r;
}

}  // namespace nct
