#pragma once

// Shared test utilities: deterministic random generators and the independent
// oracles (characteristic-polynomial eigensolver, finite-difference
// derivative stencils) the library results are checked against.  Nothing in
// here reuses the Jacobi or closed-form paths under test.

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "liouville/pucci.hpp"
#include "liouville/radial.hpp"

namespace testsupport {

using liouville::RadialProfile;
using liouville::SymMatrix;

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline SymMatrix random_symmetric(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, dist(rng));
    return m;
}

// Q^T diag(d) Q with d drawn from [lo, hi], Q a product of random Givens
// rotations: a symmetric matrix with spectrum inside [lo, hi].
inline SymMatrix random_conjugated_diagonal(std::mt19937_64& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> dval(lo, hi);
    std::uniform_real_distribution<double> dang(0.0, 6.283185307179586);
    std::uniform_int_distribution<int> didx(0, n - 1);

    std::vector<std::vector<double>> a(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
    for (int i = 0; i < n; ++i) a[std::size_t(i)][std::size_t(i)] = dval(rng);

    for (int rot = 0; rot < 4 * n; ++rot) {
        int p = didx(rng), q = didx(rng);
        if (p == q) continue;
        const double angle = dang(rng);
        const double c = std::cos(angle), s = std::sin(angle);
        for (int k = 0; k < n; ++k) {  // rows
            const double ap = a[std::size_t(p)][std::size_t(k)];
            const double aq = a[std::size_t(q)][std::size_t(k)];
            a[std::size_t(p)][std::size_t(k)] = c * ap - s * aq;
            a[std::size_t(q)][std::size_t(k)] = s * ap + c * aq;
        }
        for (int k = 0; k < n; ++k) {  // columns
            const double ap = a[std::size_t(k)][std::size_t(p)];
            const double aq = a[std::size_t(k)][std::size_t(q)];
            a[std::size_t(k)][std::size_t(p)] = c * ap - s * aq;
            a[std::size_t(k)][std::size_t(q)] = s * ap + c * aq;
        }
    }

    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            m.set(i, j, 0.5 * (a[std::size_t(i)][std::size_t(j)] + a[std::size_t(j)][std::size_t(i)]));
    return m;
}

inline std::vector<double> random_unit_vector(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& xi : x) {
            xi = gauss(rng);
            norm2 += xi * xi;
        }
    } while (norm2 < 1e-12);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& xi : x) xi *= inv;
    return x;
}

// det(M - t I) by Gaussian elimination with partial pivoting.
inline double char_poly_det(const SymMatrix& m, double t) {
    const int n = m.dim();
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[std::size_t(i)][std::size_t(j)] = m(i, j) - (i == j ? t : 0.0);

    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(a[std::size_t(row)][std::size_t(col)]) >
                std::fabs(a[std::size_t(pivot)][std::size_t(col)]))
                pivot = row;
        if (a[std::size_t(pivot)][std::size_t(col)] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(a[std::size_t(pivot)], a[std::size_t(col)]);
            det = -det;
        }
        det *= a[std::size_t(col)][std::size_t(col)];
        for (int row = col + 1; row < n; ++row) {
            const double f = a[std::size_t(row)][std::size_t(col)] / a[std::size_t(col)][std::size_t(col)];
            for (int k = col; k < n; ++k)
                a[std::size_t(row)][std::size_t(k)] -= f * a[std::size_t(col)][std::size_t(k)];
        }
    }
    return det;
}

// Eigenvalues as roots of det(M - t I): Gershgorin bracket, sign-change scan,
// bisection.  Wholly independent of the Jacobi path; wants simple spectra
// (random matrices), throws if it cannot isolate n roots.
inline std::vector<double> char_poly_eigenvalues(const SymMatrix& m) {
    const int n = m.dim();
    double radius = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::fabs(m(i, j));
        radius = std::max(radius, row);
    }
    const double lo = -radius - 1.0, hi = radius + 1.0;

    for (std::size_t samples = 4096; samples <= (1u << 22); samples *= 4) {
        std::vector<double> roots;
        double t_prev = lo;
        double p_prev = char_poly_det(m, t_prev);
        for (std::size_t i = 1; i <= samples; ++i) {
            const double t = lo + (hi - lo) * double(i) / double(samples);
            const double p = char_poly_det(m, t);
            if (p_prev == 0.0) {
                roots.push_back(t_prev);
            } else if ((p_prev < 0.0) != (p < 0.0)) {
                double a = t_prev, b = t, pa = p_prev;
                for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + radius); ++it) {
                    const double mid = 0.5 * (a + b);
                    const double pm = char_poly_det(m, mid);
                    if (pm == 0.0) {
                        a = b = mid;
                        break;
                    }
                    if ((pa < 0.0) != (pm < 0.0))
                        b = mid;
                    else {
                        a = mid;
                        pa = pm;
                    }
                }
                roots.push_back(0.5 * (a + b));
            }
            t_prev = t;
            p_prev = p;
        }
        if (static_cast<int>(roots.size()) == n) return roots;
    }
    throw std::runtime_error("char_poly_eigenvalues: failed to isolate all roots");
}

// Five-point central finite differences with a per-family step: the local
// variation scale is max(r, 1) for profiles defined at the origin and r for
// the singular ones; the step stays inside the domain.
inline double fd_step(const RadialProfile& f, double r) {
    const double scale = f.origin_allowed() ? std::max(r, 1.0) : r;
    return std::min(1e-3 * scale, 0.25 * r);
}

inline double fd_deriv1(const RadialProfile& f, double r, double h) {
    return (-f.value(r + 2 * h) + 8 * f.value(r + h) - 8 * f.value(r - h) + f.value(r - 2 * h)) /
           (12.0 * h);
}

inline double fd_deriv2(const RadialProfile& f, double r, double h) {
    return (-f.value(r + 2 * h) + 16 * f.value(r + h) - 30 * f.value(r) + 16 * f.value(r - h) -
            f.value(r - 2 * h)) /
           (12.0 * h * h);
}

// Largest |f| over the stencil, for the rounding floor of the FD estimate.
inline double fd_scale(const RadialProfile& f, double r, double h) {
    double s = 0.0;
    for (double rr : {r - 2 * h, r - h, r, r + h, r + 2 * h}) s = std::max(s, std::fabs(f.value(rr)));
    return s;
}

}  // namespace testsupport
