#pragma once

// Change-of-variable toolbox: the exponential substitutions that turn
// quadratic-gradient inequalities into drift-diffusion ones, the power
// substitution with its exponent bookkeeping, and the scalar inequalities
// the comparison arguments reduce to.

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "liouville/pucci.hpp"
#include "liouville/radial.hpp"

namespace liouville {

// v = lambda (1 - e^(-u/lambda)); strictly increasing bijection onto (-inf, lambda).
inline double hopf_cole(double u, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(u))
        throw std::invalid_argument("hopf_cole: need finite u and lambda > 0");
    return lambda * (1.0 - std::exp(-u / lambda));
}

inline double hopf_cole_inv(double v, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(v))
        throw std::invalid_argument("hopf_cole_inv: need finite v and lambda > 0");
    if (!(v < lambda)) throw std::domain_error("hopf_cole_inv: need v < lambda");
    return -lambda * std::log(1.0 - v / lambda);
}

// Pointwise content of the transform argument for smooth radial u and
// v = hopf_cole(u): reports
//   [M+(D^2 v) - b.Dv] - e^(-u/lambda) [M+(D^2 u) + |Du|^2 - b.Du]
// per radius.  Nonnegative for every input; identically zero when
// lambda == Lambda (the operator chain collapses to an equality).
//
// D^2 v = g'(u) [D^2 u - Du (x) Du / lambda] with g' = e^(-u/lambda) > 0, so
// after factoring g' out of the extremal sums the two paths share their
// tangential eigenvalue f'/r exactly and the residual reduces to the radial
// contributions alone; evaluating that difference per sign case keeps the
// tight cases at machine zero instead of cancelling operator-sized terms.
inline ResidualReport hopf_cole_chain_check(const RadialProfile& u, const DriftSpec& drift,
                                            const Ellipticity& ell, int n,
                                            std::span<const double> grid) {
    if (n < 1) throw std::invalid_argument("hopf_cole_chain_check: dimension must be positive");
    validate_drift(drift);
    if (!drift_is_pointwise(drift))
        throw std::invalid_argument("hopf_cole_chain_check: drift must be pointwise");
    if (grid.empty()) throw std::invalid_argument("hopf_cole_chain_check: empty grid");

    std::vector<double> radii(grid.begin(), grid.end());
    std::vector<double> values(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        const double f = u.value(r);
        const double f1 = r > 0.0 ? u.deriv1(r) : 0.0;
        const double f2 = u.deriv2(r);
        const double gp = std::exp(-f / ell.lambda);

        const double grad_sq = f1 * f1;
        const double w_rad = f2 - grad_sq / ell.lambda;  // radial eigenvalue of D^2 v / g'
        const double tan = r > 0.0 ? f1 / r : f2;

        // shared sign cut across both paths
        const double scale =
            std::max({std::fabs(f2), std::fabs(w_rad), std::fabs(tan)});
        const double cut = 1e-12 * scale;
        const auto coef = [&](double e) {
            return e > cut ? ell.lambda : (e < -cut ? ell.Lambda : 0.0);
        };
        const double ku = coef(f2);
        const double kw = coef(w_rad);  // w_rad <= f2, so kw never exceeds ku in the order
                                        // lambda, 0, Lambda

        // core = -kw w_rad + ku f2 - |Du|^2, with the tangential and drift
        // parts cancelled identically
        double core;
        if (ku == kw)
            core = (ku / ell.lambda - 1.0) * grad_sq;
        else if (ku == ell.lambda && kw == ell.Lambda)
            core = (ell.Lambda - ell.lambda) * (grad_sq / ell.lambda - f2);
        else if (ku == ell.lambda && kw == 0.0)
            core = ell.lambda * f2 - grad_sq;
        else  // ku == 0, kw == Lambda
            core = (ell.Lambda / ell.lambda - 1.0) * grad_sq - ell.Lambda * f2;

        values[i] = gp * core;
    }
    return make_residual_report(std::move(radii), std::move(values));
}

inline ResidualReport hopf_cole_chain_check(const RadialProfile& u, const DriftSpec& drift,
                                            const Ellipticity& ell, int n) {
    const std::vector<double> grid = default_grid(u);
    return hopf_cole_chain_check(u, drift, ell, n, grid);
}

// Exponents of the substitution u = v^b applied to u^q |Du|^gamma:
// s = 1 - gamma + b(q + gamma - 1), z = (2s + gamma)/(s + 1).
struct ExponentTriple {
    double b;
    double s;
    double z;
};

inline ExponentTriple power_transform(double q, double gamma, double b) {
    if (!std::isfinite(q) || !std::isfinite(gamma) || !std::isfinite(b))
        throw std::invalid_argument("power_transform: non-finite input");
    if (!(b * (b - 1.0) > 0.0)) throw std::invalid_argument("power_transform: need b(b-1) > 0");
    const double s = 1.0 - gamma + b * (q + gamma - 1.0);
    if (!(s > -1.0)) throw std::domain_error("power_transform: degenerate, s <= -1");
    return {b, s, (2.0 * s + gamma) / (s + 1.0)};
}

struct RegionTransfer {
    bool transferable;
    std::optional<double> delta;
    std::optional<ExponentTriple> exponents;
};

// Searches b = 1 + delta, delta in {1e-1, ..., 1e-8}, for exponents with
// s > 0 and z < beta/(beta-1); possible exactly when the strict region
// condition (beta-2) q + (beta-1) gamma < beta holds.
inline RegionTransfer region_transfer_check(double q, double gamma, const Ellipticity& ell,
                                            int n) {
    if (!std::isfinite(q) || !std::isfinite(gamma) || !(q + gamma - 1.0 > 0.0))
        throw std::invalid_argument("region_transfer_check: need q + gamma - 1 > 0");
    if (n < 1) throw std::invalid_argument("region_transfer_check: dimension must be positive");
    const double beta = ell.beta(n);
    if (!((beta - 2.0) * q + (beta - 1.0) * gamma < beta)) return {false, {}, {}};

    for (double delta = 1e-1; delta >= 0.99e-8; delta *= 0.1) {
        const double b = 1.0 + delta;
        const double s = 1.0 - gamma + b * (q + gamma - 1.0);
        if (!(s > 0.0)) continue;
        const double z = (2.0 * s + gamma) / (s + 1.0);
        if (z < beta / (beta - 1.0)) return {true, delta, ExponentTriple{b, s, z}};
    }
    return {false, {}, {}};
}

namespace detail {

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

// v(u) = integral_0^u exp(-s^(q+1) / ((q+1) lambda)) ds, by adaptive Simpson
// quadrature (tolerance 1e-12).  Reduces to hopf_cole at q = 0.
inline double mixquad_transform(double u, double q, double lambda) {
    if (!std::isfinite(u) || !std::isfinite(q) || !std::isfinite(lambda))
        throw std::invalid_argument("mixquad_transform: non-finite input");
    if (!(q >= 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("mixquad_transform: need q >= 0 and lambda > 0");
    if (u < 0.0) throw std::domain_error("mixquad_transform: need u >= 0");
    if (u == 0.0) return 0.0;

    const double denom = (q + 1.0) * lambda;
    const auto integrand = [&](double s) { return std::exp(-std::pow(s, q + 1.0) / denom); };
    return detail::integrate(integrand, 0.0, u, 1e-12);
}

// (|v|^(q-1) v - |u|^(q-1) u)(v - u) >= 2^(1-q) |v - u|^(q+1), q >= 1, up to
// the scaled tolerance 1e-12 (1+|u|+|v|)^(q+1).
inline bool lcp_inequality_check(double u, double v, double q) {
    if (!std::isfinite(u) || !std::isfinite(v) || !std::isfinite(q) || !(q >= 1.0))
        throw std::invalid_argument("lcp_inequality_check: need finite u, v and q >= 1");
    const auto spow = [q](double t) {
        return t == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(t), q), t);
    };
    const double lhs = (spow(v) - spow(u)) * (v - u);
    const double rhs = std::pow(2.0, 1.0 - q) * std::pow(std::fabs(v - u), q + 1.0);
    const double tol = 1e-12 * std::pow(1.0 + std::fabs(u) + std::fabs(v), q + 1.0);
    return lhs >= rhs - tol;
}

// Pointwise identity behind v = e^(-u) for Euclidean fields:
//   -Lap v + b.Dv + f v  =  v [Lap u - |Du|^2 - b.Du + f].
// Reported as left minus right; vanishes to roundoff for any smooth radial u.
inline ResidualReport euclidean_exp_transform_check(
    const std::function<double(double)>& u, const std::function<double(double)>& du,
    const std::function<double(double)>& d2u, const DriftSpec& drift,
    const std::function<double(double)>& rhs_f, int n, std::span<const double> grid) {
    if (n < 1)
        throw std::invalid_argument("euclidean_exp_transform_check: dimension must be positive");
    validate_drift(drift);
    if (!drift_is_pointwise(drift))
        throw std::invalid_argument("euclidean_exp_transform_check: drift must be pointwise");
    if (grid.empty()) throw std::invalid_argument("euclidean_exp_transform_check: empty grid");

    std::vector<double> radii(grid.begin(), grid.end());
    std::vector<double> values(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        const double f = u(r);
        const double f1 = r > 0.0 ? du(r) : 0.0;
        const double f2 = d2u(r);
        const double fr = rhs_f(r);

        const double v = std::exp(-f);
        const double v1 = -f1 * v;
        const double v2 = (f1 * f1 - f2) * v;

        const double lap_u = r > 0.0 ? f2 + (n - 1) * f1 / r : n * f2;
        const double lap_v = r > 0.0 ? v2 + (n - 1) * v1 / r : n * v2;
        const double bx = drift_bx(drift, r);
        const double b_du = r > 0.0 ? bx * f1 / r : 0.0;
        const double b_dv = r > 0.0 ? bx * v1 / r : 0.0;

        const double lhs = -lap_v + b_dv + fr * v;
        const double rhs = v * (lap_u - f1 * f1 - b_du + fr);
        values[i] = lhs - rhs;
    }
    return make_residual_report(std::move(radii), std::move(values));
}

inline ResidualReport euclidean_exp_transform_check(const RadialProfile& u,
                                                    const DriftSpec& drift,
                                                    const std::function<double(double)>& rhs_f,
                                                    int n, std::span<const double> grid) {
    return euclidean_exp_transform_check([&u](double r) { return u.value(r); },
                                         [&u](double r) { return u.deriv1(r); },
                                         [&u](double r) { return u.deriv2(r); }, drift, rhs_f, n,
                                         grid);
}

}  // namespace liouville
