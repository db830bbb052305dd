#include "nctheta/linalg.hpp"

#include <algorithm>
#include <deque>
#include <cmath>

namespace nct {

std::int64_t det_exact(const IMat& m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1;
    // Bareiss fraction-free elimination; all divisions are exact.
    IMat a = m;
    std::int64_t prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            a.row(k).swap(a.row(p));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

std::int64_t minor_det(const IMat& m, int row, int col) {
    const int n = static_cast<int>(m.rows());
    IMat sub(n - 1, n - 1);
    for (int i = 0, si = 0; i < n; ++i) {
        if (i == row) continue;
        for (int j = 0, sj = 0; j < n; ++j) {
            if (j == col) continue;
            sub(si, sj++) = m(i, j);
        }
        ++si;
    }
    return det_exact(sub);
}

}  // namespace

IMat adjugate(const IMat& m) {
    const int n = static_cast<int>(m.rows());
    IMat adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t c = minor_det(m, j, i);
            adj(i, j) = (((i + j) % 2) == 0) ? c : -c;
        }
    return adj;
}

IntSymMatrix::IntSymMatrix(IMat entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw dimension_mismatch("IntSymMatrix must be square");
    if (m_ != IMat(m_.transpose())) throw dimension_mismatch("IntSymMatrix must be symmetric");
}

IntSymMatrix IntSymMatrix::diag(std::initializer_list<std::int64_t> d) {
    IMat m = IMat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    int i = 0;
    for (auto v : d) m(i, i) = v, ++i;
    return IntSymMatrix(m);
}

IntSymMatrix IntSymMatrix::scalar(std::int64_t v) {
    IMat m(1, 1);
    m(0, 0) = v;
    return IntSymMatrix(m);
}

std::int64_t IntSymMatrix::det() const { return det_exact(m_); }

RMat IntSymMatrix::to_double() const { return m_.cast<double>(); }
CMat IntSymMatrix::to_complex() const { return m_.cast<double>().cast<cplx>(); }

RatMat IntSymMatrix::inverse_rational() const {
    std::int64_t d = det();
    if (d == 0) throw singular_modulus();
    IMat adj = adjugate(m_);
    RatMat inv(n(), n());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) inv(i, j) = Rat(adj(i, j), d);
    return inv;
}

RatVec IntSymMatrix::solve_rational(const IVec& v) const {
    std::int64_t d = det();
    if (d == 0) throw singular_modulus();
    IMat adj = adjugate(m_);
    RatVec r(n());
    for (int i = 0; i < n(); ++i) {
        std::int64_t acc = 0;
        for (int j = 0; j < n(); ++j) acc += adj(i, j) * v[j];
        r[i] = Rat(acc, d);
    }
    return r;
}

IntSymMatrix operator-(const IntSymMatrix& a, const IntSymMatrix& b) {
    if (a.n() != b.n()) throw dimension_mismatch();
    return IntSymMatrix(IMat(a.m_ - b.m_));
}

IntSymMatrix operator+(const IntSymMatrix& a, const IntSymMatrix& b) {
    if (a.n() != b.n()) throw dimension_mismatch();
    return IntSymMatrix(IMat(a.m_ + b.m_));
}

IntSymMatrix IntSymMatrix::operator-() const { return IntSymMatrix(IMat(-m_)); }

bool is_positive_definite(const IntSymMatrix& s) {
    for (int k = 1; k <= s.n(); ++k) {
        if (det_exact(s.mat().topLeftCorner(k, k)) <= 0) return false;
    }
    return s.n() > 0;
}

ComplexSymMatrix::ComplexSymMatrix(CMat entries, bool strict) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw dimension_mismatch("ComplexSymMatrix must be square");
    if (strict && !check_symmetric(m_)) throw dimension_mismatch("ComplexSymMatrix must be symmetric");
}

bool ComplexSymMatrix::check_symmetric(const CMat& m, double tol_rel) {
    double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return true;
    double asym = (m - CMat(m.transpose())).cwiseAbs().maxCoeff();
    return asym <= tol_rel * scale;
}

SkewMatrix::SkewMatrix(RMat entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw dimension_mismatch("SkewMatrix must be square");
    if ((m_ + RMat(m_.transpose())).cwiseAbs().maxCoeff() > 0.0)
        throw dimension_mismatch("SkewMatrix must be exactly skew-symmetric");
}

SkewMatrix SkewMatrix::theta12(double t) {
    RMat m = RMat::Zero(2, 2);
    m(0, 1) = t;
    m(1, 0) = -t;
    return SkewMatrix(m);
}

SmithForm smith_form(const IMat& a) {
    const int n = static_cast<int>(a.rows());
    IMat d = a;
    IMat u = IMat::Identity(n, n);
    IMat v = IMat::Identity(n, n);

    for (int t = 0; t < n; ++t) {
        for (;;) {
            // Pick the nonzero entry of smallest magnitude in the trailing block.
            int pi = -1, pj = -1;
            std::int64_t best = 0;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j) {
                    std::int64_t m = d(i, j) < 0 ? -d(i, j) : d(i, j);
                    if (m != 0 && (pi < 0 || m < best)) { best = m; pi = i; pj = j; }
                }
            if (pi < 0) break;  // trailing block is zero
            if (pi != t) { d.row(t).swap(d.row(pi)); u.row(t).swap(u.row(pi)); }
            if (pj != t) { d.col(t).swap(d.col(pj)); v.col(t).swap(v.col(pj)); }

            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (d(i, t) == 0) continue;
                std::int64_t q = d(i, t) / d(t, t);
                d.row(i) -= q * d.row(t);
                u.row(i) -= q * u.row(t);
                if (d(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                std::int64_t q = d(t, j) / d(t, t);
                d.col(j) -= q * d.col(t);
                v.col(j) -= q * v.col(t);
                if (d(t, j) != 0) clean = false;
            }
            if (clean) {
                bool off = false;
                for (int i = t + 1; i < n && !off; ++i) off = d(i, t) != 0;
                for (int j = t + 1; j < n && !off; ++j) off = d(t, j) != 0;
                if (!off) break;
            }
        }
        if (t < n && d(t, t) < 0) {
            d.row(t) = -d.row(t);
            u.row(t) = -u.row(t);
        }
    }

    SmithForm f{u, v, d, IMat()};
    std::int64_t du = det_exact(u);
    // u is unimodular by construction; inverse = adj(u) / det(u) with det +-1.
    f.u_inv = adjugate(u) * du;
    return f;
}

namespace {

// Per-modulus cached Smith data; moduli recur constantly in the sums.
const SmithForm& cached_smith(const IntSymMatrix& a) {
    thread_local std::deque<std::pair<IMat, SmithForm>> cache;
    for (auto& [m, f] : cache)
        if (m.rows() == a.mat().rows() && m == a.mat()) return f;
    cache.emplace_back(a.mat(), smith_form(a.mat()));
    return cache.back().second;
}

std::int64_t pos_mod(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

int delta_mod(const IntSymMatrix& a, const IVec& mu, const IVec& rho) {
    if (a.det() == 0) throw singular_modulus();
    IVec diff = rho - mu;
    RatVec w = a.solve_rational(diff);
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (!w[i].is_integer()) return 0;
    return 1;
}

CosetIndex reduce_mod(const IntSymMatrix& a, const IVec& v) {
    if (a.det() == 0) throw singular_modulus();
    const SmithForm& f = cached_smith(a);
    const int n = a.n();
    IVec y = f.u * v;
    for (int i = 0; i < n; ++i) y[i] = pos_mod(y[i], f.d(i, i));
    return CosetIndex(a, IVec(f.u_inv * y));
}

namespace {

const std::vector<CosetIndex>& cached_reps(const IntSymMatrix& a) {
    thread_local std::deque<std::pair<IMat, std::vector<CosetIndex>>> cache;
    for (auto& [m, reps] : cache)
        if (m.rows() == a.mat().rows() && m == a.mat()) return reps;
    const SmithForm& f = cached_smith(a);
    const int n = a.n();
    std::vector<CosetIndex> reps;
    IVec y = IVec::Zero(n);
    for (;;) {
        reps.emplace_back(a, IVec(f.u_inv * y));
        int i = n - 1;
        while (i >= 0) {
            if (++y[i] < f.d(i, i)) break;
            y[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    cache.emplace_back(a.mat(), std::move(reps));
    return cache.back().second;
}

}  // namespace

std::vector<CosetIndex> coset_representatives(const IntSymMatrix& a) {
    if (a.det() == 0) throw singular_modulus();
    return cached_reps(a);
}

int coset_position(const IntSymMatrix& a, const IVec& v) {
    if (a.det() == 0) throw singular_modulus();
    CosetIndex c = reduce_mod(a, v);
    const auto& reps = cached_reps(a);
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (reps[i].rep() == c.rep()) return static_cast<int>(i);
    throw index_modulus_mismatch("canonical representative not found");
}

}  // namespace nct
