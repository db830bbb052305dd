#include "nctheta/lattice.hpp"

#include <cmath>

namespace nct {

int certify_radius(int n, double decay, double dist, double amp, double tol, int cap) {
    if (!(decay > 0.0)) throw not_positive_definite("decay rate must be positive");
    if (!(tol > 0.0)) throw math_error("bad_tolerance", "tolerance must be positive");
    auto shell_count = [n](long r) {
        double outer = std::pow(2.0 * r + 1.0, n);
        double inner = std::pow(2.0 * r - 1.0, n);
        return outer - inner;
    };
    for (int radius = 0; radius <= cap; ++radius) {
        // Explicit overestimate of the tail: 400 shells term by term plus a
        // geometric remainder off the last computed shell.
        double tail = 0.0;
        double last = 0.0;
        for (long r = radius + 1; r <= radius + 400; ++r) {
            double d = static_cast<double>(r) - dist;
            last = shell_count(r) * amp * std::exp(-decay * (d > 0.0 ? d * d : 0.0));
            tail += last;
        }
        double q = std::exp(-decay);
        if (q < 1.0) tail += last * q / (1.0 - q) * 4.0;
        if (tail <= tol) return radius;
    }
    throw truncation_overflow();
}

void for_each_in_box(const IVec& center, int radius, const std::function<void(const IVec&)>& fn) {
    const int n = static_cast<int>(center.size());
    IVec w(n);
    for (int i = 0; i < n; ++i) w[i] = center[i] - radius;
    for (;;) {
        fn(w);
        int i = n - 1;
        while (i >= 0) {
            if (++w[i] <= center[i] + radius) break;
            w[i] = center[i] - radius;
            --i;
        }
        if (i < 0) break;
    }
}

LatticeSum gaussian_lattice_sum(const CMat& q, const CVec& shift, double tol, int cap) {
    const int n = static_cast<int>(q.rows());
    RMat re = 0.5 * (q.real() + RMat(q.real().transpose()));
    RMat im = 0.5 * (q.imag() + RMat(q.imag().transpose()));

    Eigen::SelfAdjointEigenSolver<RMat> es(re);
    double lam = es.eigenvalues().minCoeff();
    if (!(lam > 0.0)) throw not_positive_definite("Re Q must be positive definite");

    // |exp(-pi v^T Q v)| with v = a + i b, a = w + Re s, b = Im s:
    //   exp(-pi a^T R a + pi b^T R b + 2 pi a^T I b).
    // Completing the square in a gives the center and amplitude below.
    RVec b = shift.imag();
    RVec ib = im * b;
    RVec a0 = re.ldlt().solve(ib);
    double amp = std::exp(M_PI * (b.dot(re * b) + ib.dot(re.ldlt().solve(ib))));

    RVec w0 = a0 - shift.real();
    IVec c0(n);
    for (int i = 0; i < n; ++i) c0[i] = static_cast<std::int64_t>(std::llround(w0[i]));

    int radius = certify_radius(n, M_PI * 0.9 * lam, 0.5, amp, tol, cap);

    CMat qc = 0.5 * (q + CMat(q.transpose()));
    KahanSum acc;
    for_each_in_box(c0, radius, [&](const IVec& w) {
        CVec v = w.cast<double>().cast<cplx>() + shift;
        // v^T Q v without conjugation (Eigen's dot would conjugate v).
        cplx e = (v.transpose() * (qc * v)).value();
        acc.add(std::exp(-M_PI * e));
    });
    return {acc.value(), radius};
}

RealQuadratic fit_quadratic(int n, const std::function<double(const RVec&)>& f) {
    RealQuadratic q;
    q.h = RMat::Zero(n, n);
    q.g = RVec::Zero(n);
    RVec zero = RVec::Zero(n);
    q.c = f(zero);
    RVec fp(n), fm(n);
    for (int i = 0; i < n; ++i) {
        RVec e = RVec::Zero(n);
        e[i] = 1.0;
        fp[i] = f(e);
        e[i] = -1.0;
        fm[i] = f(e);
        q.h(i, i) = 0.5 * (fp[i] + fm[i] - 2.0 * q.c);
        q.g[i] = 0.5 * (fp[i] - fm[i]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            RVec e = RVec::Zero(n);
            e[i] = 1.0;
            e[j] = 1.0;
            double hij = 0.5 * (f(e) - fp[i] - fp[j] + q.c);
            q.h(i, j) = hij;
            q.h(j, i) = hij;
        }
    return q;
}

QuadraticPeak analyze_concave(const RealQuadratic& q) {
    RMat neg = -q.h;
    Eigen::SelfAdjointEigenSolver<RMat> es(neg);
    double lam = es.eigenvalues().minCoeff();
    if (!(lam > 0.0)) throw not_positive_definite("quadratic profile is not concave");
    QuadraticPeak p;
    p.argmax = 0.5 * neg.ldlt().solve(q.g);
    p.maxval = q(p.argmax);
    p.decay = 0.9 * lam;
    return p;
}

}  // namespace nct
