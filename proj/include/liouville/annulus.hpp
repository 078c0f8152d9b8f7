#pragma once

// Diagnostics built on m(R) = min over the closed ball of radius R of a
// radial supersolution: Hadamard-type monotonicity of m(R) R^p, the power
// comparison subsolution on annuli with its feasibility inequality, decay
// rate certification, and the radial Lyapunov scan for drift thresholds.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "liouville/pucci.hpp"
#include "liouville/radial.hpp"

namespace liouville {

// Conservative variant-based monotonicity test; compositions that cannot be
// certified fall back to the sampled minimum in m_profile.
inline bool nonincreasing_profile(const RadialProfile& f) {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RadialProfile::CompApprox>)
                return v.theta >= 0.0;
            else if constexpr (std::is_same_v<T, RadialProfile::Affine>)
                return v.scale >= 0.0 && nonincreasing_profile(*v.inner);
            else
                return true;  // the base families all have f' <= 0
        },
        f.variant());
}

// m(R) = min_{0 <= r <= R} f(r); exact value f(R) for nonincreasing
// profiles, otherwise a 1024-sample grid minimum.
inline double m_profile(const RadialProfile& f, double r_ball) {
    if (!std::isfinite(r_ball) || !(r_ball > 0.0))
        throw std::invalid_argument("m_profile: need R > 0");
    if (nonincreasing_profile(f)) return f.value(r_ball);

    const std::size_t samples = 1024;
    const double lo = f.origin_allowed() ? 0.0 : r_ball / double(samples);
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= samples; ++i) {
        const double r = lo + (r_ball - lo) * double(i) / double(samples);
        m = std::min(m, f.value(r));
    }
    return m;
}

struct MonotonicityReport {
    double exponent;
    std::vector<double> radii;
    std::vector<double> values;           // m(R) * R^exponent per radius
    std::vector<std::size_t> violations;  // indices i where values[i+1] drops below values[i]

    bool nondecreasing() const { return violations.empty(); }
};

// Checks R -> m(R) R^exponent for nondecrease over the grid, with relative
// tolerance 1e-10 per adjacent pair (powers across many decades of radius
// accumulate representable rounding).
inline MonotonicityReport hadamard_check(const RadialProfile& f, double exponent,
                                         std::span<const double> grid) {
    if (!std::isfinite(exponent)) throw std::invalid_argument("hadamard_check: exponent");
    if (grid.size() < 2) throw std::invalid_argument("hadamard_check: need >= 2 radii");

    MonotonicityReport rep;
    rep.exponent = exponent;
    rep.radii.assign(grid.begin(), grid.end());
    rep.values.resize(rep.radii.size());
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        const double r = rep.radii[i];
        if (!(r > 0.0)) throw std::invalid_argument("hadamard_check: radii must be positive");
        if (i > 0 && !(r > rep.radii[i - 1]))
            throw std::invalid_argument("hadamard_check: radii must be strictly increasing");
        rep.values[i] = m_profile(f, r) * std::pow(r, exponent);
    }
    const double rel_tol = 1e-10;
    for (std::size_t i = 0; i + 1 < rep.values.size(); ++i) {
        const double a = rep.values[i], b = rep.values[i + 1];
        if (b < a - rel_tol * std::max(std::fabs(a), std::fabs(b))) rep.violations.push_back(i);
    }
    return rep;
}

struct DecayBound {
    bool certified;  // max of m(R) R^(2/(q-1)) attained away from the grid end
    double constant;
    double argmax_radius;
    std::size_t argmax_index;
};

// Certifies m(R) <= C R^(-2/(q-1)) on the sampled range: the fitted constant
// is the grid maximum of m(R) R^(2/(q-1)), trusted only when the maximum is
// interior (a maximum at the last radius means the product is still growing).
inline DecayBound decay_bound_check(const RadialProfile& f, double q,
                                    std::span<const double> grid) {
    if (!std::isfinite(q) || !(q > 1.0)) throw std::invalid_argument("decay_bound_check: q > 1");
    if (grid.empty()) throw std::invalid_argument("decay_bound_check: empty grid");
    const double expo = 2.0 / (q - 1.0);

    DecayBound out{false, -std::numeric_limits<double>::infinity(), 0.0, 0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = m_profile(f, grid[i]) * std::pow(grid[i], expo);
        if (v > out.constant) {
            out.constant = v;
            out.argmax_radius = grid[i];
            out.argmax_index = i;
        }
    }
    out.certified = std::isfinite(out.constant) && out.argmax_index + 1 < grid.size();
    return out;
}

// Feasibility inequality for the power comparison subsolution on the annulus
// (R1, R):
//   m(R1) R1^e >= (1 - (R1/R)^nu) lambda^(1/(gamma-1)) (beta-nu-2)^(1/(gamma-1)) / nu
//                 + m(R) R1^e,     e = (2-gamma)/(gamma-1).
inline bool crucineq(double r1, double r_outer, double m1, double m_outer, double nu,
                     double gamma, const Ellipticity& ell, int n) {
    if (!(r1 > 0.0) || !(r_outer > r1)) throw std::invalid_argument("crucineq: need 0 < R1 < R");
    if (!(gamma > 1.0)) throw std::invalid_argument("crucineq: need gamma > 1");
    if (!(nu > 0.0)) throw std::invalid_argument("crucineq: need nu > 0");
    const double beta = ell.beta(n);
    if (!(nu < beta - 2.0)) throw std::invalid_argument("crucineq: need nu < beta - 2");
    if (!(m1 >= m_outer) || !(m_outer >= 0.0))
        throw std::invalid_argument("crucineq: need m1 >= mR >= 0");

    const double e = (2.0 - gamma) / (gamma - 1.0);
    const double inv = 1.0 / (gamma - 1.0);
    const double lhs = m1 * std::pow(r1, e);
    const double rhs = (1.0 - std::pow(r1 / r_outer, nu)) * std::pow(ell.lambda, inv) *
                           std::pow(beta - nu - 2.0, inv) / nu +
                       m_outer * std::pow(r1, e);
    return lhs >= rhs;
}

struct PsiComparison {
    ResidualReport residual;   // |D Psi|^gamma - M+(D^2 Psi) on a grid in [R1, R]
    bool crucial_inequality;   // crucineq at (R1, R); implies residual >= 0
    double theta;
};

// Builds Psi(x) = Theta(|x|^-nu - R^-nu) + m(R) with
// Theta = (m(R1)-m(R)) / (R1^-nu - R^-nu) and reports its subsolution
// residual for M+(D^2 Psi) <= |D Psi|^gamma on the annulus.
inline PsiComparison psi_comparison(double r1, double r_outer, double m1, double m_outer,
                                    double nu, double gamma, const Ellipticity& ell, int n,
                                    std::size_t points = 512) {
    if (!(r1 > 0.0) || !(r_outer > r1))
        throw std::invalid_argument("psi_comparison: need 0 < R1 < R");
    const double beta = ell.beta(n);
    if (!(nu > 0.0) || !(nu < beta - 2.0))
        throw std::invalid_argument("psi_comparison: need 0 < nu < beta - 2");
    if (!(gamma > 1.0) || !(gamma <= beta / (beta - 1.0)))
        throw std::invalid_argument("psi_comparison: need 1 < gamma <= beta/(beta-1)");
    if (!(m1 >= m_outer) || !(m_outer >= 0.0))
        throw std::invalid_argument("psi_comparison: need m1 >= mR >= 0");

    const double theta =
        (m1 - m_outer) / (std::pow(r1, -nu) - std::pow(r_outer, -nu));  // >= 0, 0 iff m1 == mR
    const RadialProfile psi = RadialProfile::comp_approx(theta, nu, r_outer, m_outer);

    const std::vector<double> grid = log_grid(r1, r_outer, points);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        const double grad = std::fabs(psi.deriv1(r));
        values[i] =
            std::pow(grad, gamma) - pucci_radial(profile_eigs(psi, r, n), ell, Sign::plus);
    }

    return {make_residual_report(grid, std::move(values)),
            crucineq(r1, r_outer, m1, m_outer, nu, gamma, ell, n), theta};
}

struct LyapunovScan {
    bool admissible;
    std::optional<double> from_radius;  // absent for purely asymptotic drifts
};

// Scans the sign condition Lambda(N-1) - lambda + b(x).x <= 0 under which
// -log|x| is an explosive subsolution of the drift operator outside a ball.
// Pointwise drifts are sampled on a log grid up to r_max; asymptotic drifts
// reduce to the single limsup inequality.
inline LyapunovScan lyapunov_scan(const DriftSpec& drift, const Ellipticity& ell, int n,
                                  double r_max) {
    if (n < 1) throw std::invalid_argument("lyapunov_scan: dimension must be positive");
    validate_drift(drift);
    const double base = ell.Lambda * (n - 1) - ell.lambda;

    if (!drift_is_pointwise(drift))
        return {base + drift_limsup_bx(drift) <= 0.0, std::nullopt};

    if (!(r_max > 1e-4)) throw std::invalid_argument("lyapunov_scan: need r_max > 1e-4");
    const std::vector<double> grid = log_grid(1e-4, r_max, 512);
    std::size_t last_bad = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (base + drift_bx(drift, grid[i]) > 0.0) last_bad = i;
    }
    if (last_bad == grid.size()) return {true, grid.front()};
    if (last_bad + 1 == grid.size()) return {false, std::nullopt};
    return {true, grid[last_bad + 1]};
}

}  // namespace liouville
