#pragma once

// Extremal (Pucci-type) operators on symmetric matrices and on radial data,
// plus the ellipticity calculus that drives every threshold downstream.
//
// M+(M) = -lambda * sum(e_k > 0) e_k - Lambda * sum(e_k < 0) e_k
// M-(M) = -Lambda * sum(e_k > 0) e_k - lambda * sum(e_k < 0) e_k
//
// evaluated from the eigenvalues e_k of M.  For a radial function f(|x|) the
// Hessian eigenvalues are f''(r) (simple) and f'(r)/r (multiplicity N-1),
// which makes the operators exact on closed-form profiles.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace liouville {

enum class Sign { plus, minus };

// Uniform ellipticity bounds 0 < lambda <= Lambda.  The derived exponents
// beta(N) = (Lambda/lambda)(N-1) + 1 and alpha(N) = (lambda/Lambda)(N-1) + 1
// are the effective dimensions of the maximal / minimal operator.
struct Ellipticity {
    double lambda;
    double Lambda;

    Ellipticity(double lo, double hi) : lambda(lo), Lambda(hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(0.0 < lo) || !(lo <= hi))
            throw std::invalid_argument("Ellipticity: need 0 < lambda <= Lambda");
    }

    double beta(int n) const { return Lambda / lambda * (n - 1) + 1.0; }
    double alpha(int n) const { return lambda / Lambda * (n - 1) + 1.0; }
};

// Dense symmetric matrix, symmetrized on write.  Sized for the N <= 64 range
// this toolkit works in; storage is the full square for simple indexing.
class SymMatrix {
  public:
    explicit SymMatrix(int n) : n_(checked_dim(n)), a_(std::size_t(n) * std::size_t(n), 0.0) {}

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
        return m;
    }

    static SymMatrix diagonal(std::span<const double> d) {
        SymMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.n_; ++i) m.set(i, i, d[std::size_t(i)]);
        return m;
    }

    int dim() const { return n_; }

    double operator()(int i, int j) const { return a_[idx(i, j)]; }

    // Writes land on both (i,j) and (j,i).
    void set(int i, int j, double v) {
        a_[idx(i, j)] = v;
        a_[idx(j, i)] = v;
    }

    SymMatrix& operator+=(const SymMatrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    SymMatrix& operator-=(const SymMatrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    SymMatrix& operator*=(double s) {
        for (double& v : a_) v *= s;
        return *this;
    }

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

    SymMatrix operator-() const {
        SymMatrix m = *this;
        return m *= -1.0;
    }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : a_) m = std::max(m, std::fabs(v));
        return m;
    }

    bool finite() const {
        for (double v : a_) {
            if (!std::isfinite(v)) return false;
        }
        return true;
    }

  private:
    static int checked_dim(int n) {
        if (n < 1) throw std::invalid_argument("SymMatrix: dimension must be positive");
        return n;
    }
    void require_same_dim(const SymMatrix& o) const {
        if (o.n_ != n_) throw std::invalid_argument("SymMatrix: dimension mismatch");
    }
    std::size_t idx(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("SymMatrix: index");
        return std::size_t(i) * std::size_t(n_) + std::size_t(j);
    }

    int n_;
    std::vector<double> a_;
};

// Eigenvalues of a dense symmetric matrix, ascending, by cyclic Jacobi
// sweeps.  Deterministic and dependency-free; accuracy ~ n * eps * ||M||.
inline std::vector<double> sym_eigenvalues(SymMatrix m) {
    if (!m.finite()) throw std::invalid_argument("sym_eigenvalues: non-finite entries");
    const int n = m.dim();
    const double target = 8.0 * 1e-17 * (1.0 + m.max_abs());

    for (int sweep = 0; sweep < 99; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::fabs(m(p, q)));
        if (off <= target) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (std::fabs(apq) <= target) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                // tan of the rotation angle, the root of t^2 + 2 theta t - 1 = 0
                // with the smaller magnitude
                double t;
                if (std::fabs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = m(p, p), aqq = m(q, q);
                m.set(p, p, app - t * apq);
                m.set(q, q, aqq + t * apq);
                m.set(p, q, 0.0);
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = m(k, p), akq = m(k, q);
                    m.set(k, p, c * akp - s * akq);
                    m.set(k, q, s * akp + c * akq);
                }
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[std::size_t(i)] = m(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

// Signed eigenvalue sums with the relative zero cut |e| < 1e-12 max|e|: both
// branches of the operator vanish on a zero eigenvalue, so the cut only
// stabilizes the sign classification of rounding-level eigenvalues.  The cut
// must scale with the matrix, or uniformly tiny Hessians (decaying profiles
// at large radii) would pick up an absolute operator error of its size.
inline double pucci_from_eigenvalues(std::span<const double> eig, const Ellipticity& ell,
                                     Sign sign) {
    double scale = 0.0;
    for (double e : eig) scale = std::max(scale, std::fabs(e));
    const double cut = 1e-12 * scale;

    double pos = 0.0, neg = 0.0;
    for (double e : eig) {
        if (e > cut)
            pos += e;
        else if (e < -cut)
            neg += e;
    }
    return sign == Sign::plus ? -ell.lambda * pos - ell.Lambda * neg
                              : -ell.Lambda * pos - ell.lambda * neg;
}

inline double pucci_plus(const SymMatrix& m, const Ellipticity& ell) {
    return pucci_from_eigenvalues(sym_eigenvalues(m), ell, Sign::plus);
}

inline double pucci_minus(const SymMatrix& m, const Ellipticity& ell) {
    return pucci_from_eigenvalues(sym_eigenvalues(m), ell, Sign::minus);
}

// Hessian spectrum of a radial function at |x| = r > 0: f''(r) simple,
// f'(r)/r with multiplicity N-1.  The origin is a removable limit handled
// by callers (both eigenvalues tend to f''(0)).
struct RadialEigs {
    double radial;
    double tangential;
    int tangential_multiplicity;
};

inline RadialEigs radial_eigs(double fp, double fpp, double r, int n) {
    if (n < 1) throw std::invalid_argument("radial_eigs: dimension must be positive");
    if (!std::isfinite(fp) || !std::isfinite(fpp) || !std::isfinite(r))
        throw std::invalid_argument("radial_eigs: non-finite input");
    if (!(r > 0.0)) throw std::domain_error("radial_eigs: r must be positive");
    return {fpp, fp / r, n - 1};
}

inline double pucci_radial(const RadialEigs& e, const Ellipticity& ell, Sign sign) {
    if (!std::isfinite(e.radial) || !std::isfinite(e.tangential) || e.tangential_multiplicity < 0)
        throw std::invalid_argument("pucci_radial: invalid eigenvalues");
    const double scale = std::max(std::fabs(e.radial), std::fabs(e.tangential));
    const double cut = 1e-12 * scale;

    double pos = 0.0, neg = 0.0;
    auto account = [&](double val, double mult) {
        if (val > cut)
            pos += mult * val;
        else if (val < -cut)
            neg += mult * val;
    };
    account(e.radial, 1.0);
    account(e.tangential, double(e.tangential_multiplicity));
    return sign == Sign::plus ? -ell.lambda * pos - ell.Lambda * neg
                              : -ell.Lambda * pos - ell.lambda * neg;
}

// Reconstruction fpp * xh xh^T + (fp/r)(I - xh xh^T); eigenvalues are exactly
// radial_eigs(fp, fpp, |x|, N).  Used to cross-validate the radial path.
inline SymMatrix hessian_at_point(std::span<const double> x, double fp, double fpp) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw std::invalid_argument("hessian_at_point: empty point");
    double r2 = 0.0;
    for (double xi : x) {
        if (!std::isfinite(xi)) throw std::invalid_argument("hessian_at_point: non-finite point");
        r2 += xi * xi;
    }
    if (!(r2 > 0.0)) throw std::domain_error("hessian_at_point: x must be nonzero");
    if (!std::isfinite(fp) || !std::isfinite(fpp))
        throw std::invalid_argument("hessian_at_point: non-finite derivatives");

    const double r = std::sqrt(r2);
    const double tang = fp / r;
    SymMatrix h(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double proj = x[std::size_t(i)] * x[std::size_t(j)] / r2;
            double v = (fpp - tang) * proj;
            if (i == j) v += tang;
            h.set(i, j, v);
        }
    }
    return h;
}

// Effective dimension of the linear operator -Tr(A D^2 .) at direction x:
// Tr(A) / (x^T A x / |x|^2).  Equals N for A = I.
inline double effective_dimension_psi(const SymMatrix& a, std::span<const double> x) {
    if (static_cast<int>(x.size()) != a.dim())
        throw std::invalid_argument("effective_dimension_psi: dimension mismatch");
    if (!a.finite()) throw std::invalid_argument("effective_dimension_psi: non-finite matrix");
    double r2 = 0.0;
    for (double xi : x) {
        if (!std::isfinite(xi))
            throw std::invalid_argument("effective_dimension_psi: non-finite point");
        r2 += xi * xi;
    }
    if (!(r2 > 0.0)) throw std::domain_error("effective_dimension_psi: x must be nonzero");

    double quad = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) quad += x[std::size_t(i)] * a(i, j) * x[std::size_t(j)];
    quad /= r2;
    if (!(quad > 0.0))
        throw std::domain_error("effective_dimension_psi: nonpositive quadratic form at x");
    return a.trace() / quad;
}

}  // namespace liouville
