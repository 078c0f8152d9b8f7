#pragma once

// Constructive counterexample synthesis.  Each feasibility region comes with
// an explicit decaying profile; parameters are chosen with a certified
// margin (interval midpoint, amplitude halving against a closed-form
// sufficient condition) and the residual is re-verified on a grid before
// anything is returned.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "liouville/pucci.hpp"
#include "liouville/radial.hpp"

namespace liouville {

// Residual floor certified by every returned witness.
inline constexpr double witness_residual_floor = -1e-12;

struct WitnessReport {
    RadialProfile profile;
    std::optional<DriftSpec> drift;
    double delta_low;   // feasibility interval for the decay exponent
    double delta_high;
    double delta;       // chosen exponent (interval midpoint unless pinned)
    double amplitude;
    ResidualReport residual;
};

// Exponent interval and amplitude only; no grid work.
struct WitnessParams {
    double delta_low;
    double delta_high;
    double delta;
    double amplitude;
};

namespace detail {

inline void check_exponent_inputs(double q, double gamma, int n) {
    if (!std::isfinite(q) || !std::isfinite(gamma) || q < 0.0 || gamma < 0.0)
        throw std::invalid_argument("witness: need finite q >= 0 and gamma >= 0");
    if (n < 1) throw std::invalid_argument("witness: dimension must be positive");
}

inline WitnessReport verified(RadialProfile profile, std::optional<DriftSpec> drift,
                              WitnessParams p, ResidualReport residual) {
    if (!(residual.min >= witness_residual_floor))
        throw std::logic_error("witness: residual verification failed");
    return {std::move(profile), std::move(drift), p.delta_low, p.delta_high, p.delta,
            p.amplitude, std::move(residual)};
}

}  // namespace detail

// C (1+r^2)^(-delta/2) against u^q + |Du|^gamma.  Feasible exactly on
// q > beta/(beta-2), gamma > beta/(beta-1) (both > 1 needed for the
// amplitude shrink to beat both terms).
inline std::optional<WitnessParams> h1_witness_params(double q, double gamma,
                                                      const Ellipticity& ell, int n) {
    detail::check_exponent_inputs(q, gamma, n);
    if (!(q > 1.0) || !(gamma > 1.0)) return std::nullopt;

    const double beta = ell.beta(n);
    const double lo = std::max({2.0 / (q - 1.0), (2.0 - gamma) / (gamma - 1.0), 0.0});
    const double hi = beta - 2.0;
    if (!(lo < hi)) return std::nullopt;

    WitnessParams p{lo, hi, 0.5 * (lo + hi), 1.0};
    // Both subtracted terms are dominated by their r = 0 suprema, so
    // lambda delta K (beta-delta-2) >= K^q + (delta K)^gamma suffices; it
    // holds for small K because q, gamma > 1.
    const auto margin = [&](double k) {
        return ell.lambda * p.delta * k * (beta - p.delta - 2.0) - std::pow(k, q) -
               std::pow(p.delta * k, gamma);
    };
    for (int i = 0; i < 200 && !(margin(p.amplitude) >= 0.0); ++i) p.amplitude *= 0.5;
    if (!(margin(p.amplitude) >= 0.0))
        throw std::logic_error("h1_witness: amplitude search exhausted");
    return p;
}

inline std::optional<WitnessReport> h1_witness(double q, double gamma, const Ellipticity& ell,
                                               int n) {
    const auto p = h1_witness_params(q, gamma, ell, n);
    if (!p) return std::nullopt;
    RadialProfile profile = RadialProfile::power_decay(p->amplitude, p->delta);
    ResidualReport res = residual_grid(profile, H1{q, gamma}, ell, n, Sign::plus);
    return detail::verified(std::move(profile), std::nullopt, *p, std::move(res));
}

// C (1+r^2)^(-delta/2) against u^q |Du|^gamma.  The interval
// (max{(2-gamma)/(q+gamma-1), 0}, beta-2) is nonempty exactly when
// (beta-2) q + (beta-1) gamma > beta.
inline std::optional<WitnessParams> h2_witness_params(double q, double gamma,
                                                      const Ellipticity& ell, int n) {
    detail::check_exponent_inputs(q, gamma, n);
    if (!(gamma > 1.0)) return std::nullopt;

    const double beta = ell.beta(n);
    const double lo = std::max((2.0 - gamma) / (q + gamma - 1.0), 0.0);
    const double hi = beta - 2.0;
    if (!(lo < hi)) return std::nullopt;

    WitnessParams p{lo, hi, 0.5 * (lo + hi), 0.0};
    // lambda delta C (beta-delta-2) >= (C delta)^gamma C^q with a factor-of-two
    // margin, solved for C in closed form.
    p.amplitude = 0.5 * std::pow(ell.lambda * (beta - p.delta - 2.0) /
                                     std::pow(p.delta, gamma - 1.0),
                                 1.0 / (q + gamma - 1.0));
    return p;
}

inline std::optional<WitnessReport> h2_witness(double q, double gamma, const Ellipticity& ell,
                                               int n) {
    const auto p = h2_witness_params(q, gamma, ell, n);
    if (!p) return std::nullopt;
    RadialProfile profile = RadialProfile::power_decay(p->amplitude, p->delta);
    ResidualReport res = residual_grid(profile, H2{q, gamma}, ell, n, Sign::plus);
    return detail::verified(std::move(profile), std::nullopt, *p, std::move(res));
}

// Theta |x|^(-nu) with nu = (2-gamma)/(gamma-1) against |Du|^gamma on r > 0;
// needs beta/(beta-1) < gamma < 2 for nu to land in (0, beta-2).
inline std::optional<WitnessReport> singular_h2_witness(double gamma, const Ellipticity& ell,
                                                        int n) {
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw std::invalid_argument("singular_h2_witness: invalid gamma");
    if (n < 1) throw std::invalid_argument("singular_h2_witness: dimension must be positive");
    const double beta = ell.beta(n);
    if (!(gamma > beta / (beta - 1.0)) || !(gamma < 2.0)) return std::nullopt;

    const double nu = (2.0 - gamma) / (gamma - 1.0);
    const double amplitude =
        0.5 * std::pow(ell.lambda * (beta - nu - 2.0) / std::pow(nu, gamma - 1.0),
                       1.0 / (gamma - 1.0));
    WitnessParams p{0.0, beta - 2.0, nu, amplitude};
    RadialProfile profile = RadialProfile::singular_power(amplitude, nu);
    const std::vector<double> grid = log_grid(1e-3, 1e6, 512);
    ResidualReport res = residual_grid(profile, H2{0.0, gamma}, ell, n, Sign::plus, grid);
    return detail::verified(std::move(profile), std::nullopt, p, std::move(res));
}

// (1+r^2)^(-delta/2) against the pure drift b(x) = lambda(2-beta+delta)
// x/(1+|x|^2): a nonconstant bounded supersolution of M+(D^2 u) - b.Du >= 0
// whose limsup b.x = lambda(2-beta+delta) sits above the lambda(2-beta)
// threshold for every delta in (0, beta-2).
inline WitnessReport drift_witness(const Ellipticity& ell, int n, double delta) {
    if (n < 1) throw std::invalid_argument("drift_witness: dimension must be positive");
    const double beta = ell.beta(n);
    if (!std::isfinite(delta) || !(delta > 0.0) || !(delta < beta - 2.0))
        throw std::invalid_argument("drift_witness: need 0 < delta < beta - 2");

    const DriftSpec drift = ScaledRadialDrift{ell.lambda * (2.0 - beta + delta)};
    RadialProfile profile = RadialProfile::power_decay(1.0, delta);
    ResidualReport res =
        residual_grid(profile, H3{2.0, 0.0, drift}, ell, n, Sign::plus);
    WitnessParams p{0.0, beta - 2.0, delta, 1.0};
    return detail::verified(std::move(profile), drift, p, std::move(res));
}

}  // namespace liouville
