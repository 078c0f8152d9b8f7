#pragma once

// Closed-form radial profile families with exact first and second
// derivatives, the model Hamiltonians, drift fields, and pointwise residual
// evaluation of M_sign(D^2 u) >= H on radial grids.

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "liouville/pucci.hpp"

namespace liouville {

// ---------------------------------------------------------------------------
// Drift fields, described by the radial pairing b(x).x

struct ZeroDrift {};
struct ScaledRadialDrift {
    double c;  // b(x) = c x / (1 + |x|^2), so b(x).x = c r^2/(1+r^2)
};
struct AsymptoticDrift {
    double limsup_bx;  // only limsup of b(x).x is known
};
using DriftSpec = std::variant<ZeroDrift, ScaledRadialDrift, AsymptoticDrift>;

inline double drift_limsup_bx(const DriftSpec& d) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ZeroDrift>)
                return 0.0;
            else if constexpr (std::is_same_v<T, ScaledRadialDrift>)
                return v.c;
            else
                return v.limsup_bx;
        },
        d);
}

inline bool drift_is_pointwise(const DriftSpec& d) {
    return !std::holds_alternative<AsymptoticDrift>(d);
}

// b(x).x at |x| = r; asymptotic drifts have no pointwise values.
inline double drift_bx(const DriftSpec& d, double r) {
    if (const auto* z = std::get_if<ZeroDrift>(&d)) {
        (void)z;
        return 0.0;
    }
    if (const auto* s = std::get_if<ScaledRadialDrift>(&d)) return s->c * r * r / (1.0 + r * r);
    throw std::invalid_argument("drift_bx: asymptotic drift has no pointwise values");
}

inline void validate_drift(const DriftSpec& d) {
    if (!std::isfinite(drift_limsup_bx(d)))
        throw std::invalid_argument("DriftSpec: non-finite coefficient");
}

// ---------------------------------------------------------------------------
// Radial profiles

// Immutable closed-form radial function with exact value/deriv1/deriv2.
// PowerDecay and Cubic live on r >= 0, the singular families on r > 0.
class RadialProfile {
  public:
    struct PowerDecay {  // C (1+r^2)^(-delta/2)
        double amplitude;
        double delta;
    };
    struct SingularPower {  // Theta r^(-nu)
        double amplitude;
        double exponent;
    };
    struct NegLog {};    // -log r
    struct Cubic {       // level * (1 - [((r - r_inner)^+)^3 / (r_outer - r_inner)^3])
        double level;
        double r_inner;
        double r_outer;
    };
    struct CompApprox {  // theta (r^(-nu) - r_outer^(-nu)) + offset
        double theta;
        double exponent;
        double r_outer;
        double offset;
    };
    struct Affine {      // scale * inner(r) + shift
        double scale;
        double shift;
        std::shared_ptr<const RadialProfile> inner;
    };
    using Variant = std::variant<PowerDecay, SingularPower, NegLog, Cubic, CompApprox, Affine>;

    static RadialProfile power_decay(double amplitude, double delta) {
        require(std::isfinite(amplitude) && amplitude > 0.0, "PowerDecay: amplitude > 0");
        require(std::isfinite(delta) && delta > 0.0, "PowerDecay: delta > 0");
        return RadialProfile(PowerDecay{amplitude, delta});
    }
    static RadialProfile singular_power(double amplitude, double nu) {
        require(std::isfinite(amplitude) && amplitude > 0.0, "SingularPower: amplitude > 0");
        require(std::isfinite(nu) && nu > 0.0, "SingularPower: exponent > 0");
        return RadialProfile(SingularPower{amplitude, nu});
    }
    static RadialProfile neg_log() { return RadialProfile(NegLog{}); }
    static RadialProfile cubic(double level, double r_inner, double r_outer) {
        require(std::isfinite(level) && level > 0.0, "Cubic: level > 0");
        require(std::isfinite(r_inner) && r_inner > 0.0, "Cubic: r_inner > 0");
        require(std::isfinite(r_outer) && r_outer > r_inner, "Cubic: r_outer > r_inner");
        return RadialProfile(Cubic{level, r_inner, r_outer});
    }
    static RadialProfile comp_approx(double theta, double nu, double r_outer, double offset) {
        require(std::isfinite(theta), "CompApprox: finite theta");
        require(std::isfinite(nu) && nu > 0.0, "CompApprox: exponent > 0");
        require(std::isfinite(r_outer) && r_outer > 0.0, "CompApprox: r_outer > 0");
        require(std::isfinite(offset), "CompApprox: finite offset");
        return RadialProfile(CompApprox{theta, nu, r_outer, offset});
    }
    static RadialProfile affine(double scale, double shift, RadialProfile inner) {
        require(std::isfinite(scale) && std::isfinite(shift), "Affine: finite coefficients");
        return RadialProfile(Affine{scale, shift, std::make_shared<RadialProfile>(std::move(inner))});
    }

    bool origin_allowed() const {
        return std::visit(
            [](const auto& v) -> bool {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, PowerDecay> || std::is_same_v<T, Cubic>)
                    return true;
                else if constexpr (std::is_same_v<T, Affine>)
                    return v.inner->origin_allowed();
                else
                    return false;
            },
            v_);
    }

    double value(double r) const {
        check_domain(r);
        return eval<0>(r);
    }
    double deriv1(double r) const {
        check_domain(r);
        return eval<1>(r);
    }
    double deriv2(double r) const {
        check_domain(r);
        return eval<2>(r);
    }

    const Variant& variant() const { return v_; }

  private:
    explicit RadialProfile(Variant v) : v_(std::move(v)) {}

    static void require(bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    }

    void check_domain(double r) const {
        if (!std::isfinite(r) || r < 0.0 || (r == 0.0 && !origin_allowed()))
            throw std::domain_error("RadialProfile: radius outside the profile domain");
    }

    template <int Order>
    double eval(double r) const {
        return std::visit([r](const auto& v) { return eval_variant<Order>(v, r); }, v_);
    }

    template <int Order>
    static double eval_variant(const PowerDecay& p, double r) {
        const double w = 1.0 + r * r;
        if constexpr (Order == 0) return p.amplitude * std::pow(w, -p.delta / 2.0);
        if constexpr (Order == 1) return -p.amplitude * p.delta * r * std::pow(w, -p.delta / 2.0 - 1.0);
        return p.amplitude * p.delta * std::pow(w, -p.delta / 2.0 - 2.0) * ((p.delta + 1.0) * r * r - 1.0);
    }
    template <int Order>
    static double eval_variant(const SingularPower& p, double r) {
        if constexpr (Order == 0) return p.amplitude * std::pow(r, -p.exponent);
        if constexpr (Order == 1) return -p.amplitude * p.exponent * std::pow(r, -p.exponent - 1.0);
        return p.amplitude * p.exponent * (p.exponent + 1.0) * std::pow(r, -p.exponent - 2.0);
    }
    template <int Order>
    static double eval_variant(const NegLog&, double r) {
        if constexpr (Order == 0) return -std::log(r);
        if constexpr (Order == 1) return -1.0 / r;
        return 1.0 / (r * r);
    }
    template <int Order>
    static double eval_variant(const Cubic& p, double r) {
        const double w = std::max(r - p.r_inner, 0.0);
        const double len = p.r_outer - p.r_inner;
        const double l3 = len * len * len;
        if constexpr (Order == 0) return p.level * (1.0 - w * w * w / l3);
        if constexpr (Order == 1) return -3.0 * p.level * w * w / l3;
        return -6.0 * p.level * w / l3;
    }
    template <int Order>
    static double eval_variant(const CompApprox& p, double r) {
        if constexpr (Order == 0)
            return p.theta * (std::pow(r, -p.exponent) - std::pow(p.r_outer, -p.exponent)) + p.offset;
        if constexpr (Order == 1) return -p.theta * p.exponent * std::pow(r, -p.exponent - 1.0);
        return p.theta * p.exponent * (p.exponent + 1.0) * std::pow(r, -p.exponent - 2.0);
    }
    template <int Order>
    static double eval_variant(const Affine& p, double r) {
        if constexpr (Order == 0) return p.scale * p.inner->value(r) + p.shift;
        if constexpr (Order == 1) return p.scale * p.inner->deriv1(r);
        return p.scale * p.inner->deriv2(r);
    }

    Variant v_;
};

// ---------------------------------------------------------------------------
// Grids

inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(0.0 < lo) || !(lo < hi) || points < 2)
        throw std::invalid_argument("log_grid: need 0 < lo < hi and points >= 2");
    std::vector<double> g(points);
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = std::pow(10.0, llo + (lhi - llo) * double(i) / double(points - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

// 512 log-spaced radii in [1e-4, 1e6]; spans both concavity regimes of the
// decaying profiles and the asymptotic regime.
inline std::vector<double> default_grid() { return log_grid(1e-4, 1e6, 512); }

// Same, with r = 0 prepended when the profile domain allows it.
inline std::vector<double> default_grid(const RadialProfile& f) {
    std::vector<double> g = default_grid();
    if (f.origin_allowed()) g.insert(g.begin(), 0.0);
    return g;
}

// ---------------------------------------------------------------------------
// Hamiltonians

struct H1 {  // u^q + |Du|^gamma
    double q;
    double gamma;
};
struct H2 {  // u^q |Du|^gamma
    double q;
    double gamma;
};
// Drift-perturbed gradient term.  The inequality verified downstream is
// M_sign(D^2 u) - amplitude |Du|^gamma - b(x).Du >= 0: the drift rides with
// the operator, and the same b feeds the limsup threshold tests.
struct H3 {
    double gamma;
    double amplitude;
    DriftSpec drift;
};
using HamiltonianSpec = std::variant<H1, H2, H3>;

inline void validate_hamiltonian(const HamiltonianSpec& h) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, H1> || std::is_same_v<T, H2>) {
                if (!std::isfinite(v.q) || v.q < 0.0)
                    throw std::invalid_argument("Hamiltonian: need q >= 0");
                if (!std::isfinite(v.gamma) || !(v.gamma > 0.0))
                    throw std::invalid_argument("Hamiltonian: need gamma > 0");
            } else {
                if (!std::isfinite(v.gamma) || !(v.gamma > 0.0))
                    throw std::invalid_argument("Hamiltonian: need gamma > 0");
                if (!std::isfinite(v.amplitude))
                    throw std::invalid_argument("Hamiltonian: non-finite amplitude");
                validate_drift(v.drift);
            }
        },
        h);
}

namespace detail {

// u^q with the domain guard: fractional powers of negative values are
// undefined here.
inline double zero_order_power(double u, double q) {
    if (u < 0.0 && q != std::floor(q))
        throw std::domain_error("residual: u^q needs u >= 0 for fractional q");
    return std::pow(u, q);
}

}  // namespace detail

// H(u, Du, x) reduced to radius r, with |Du| = |f'(r)| and b.Du = b(x).x f'(r)/r.
inline double hamiltonian_value(const HamiltonianSpec& h, double u, double du, double r) {
    const double grad = std::fabs(du);
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, H1>)
                return detail::zero_order_power(u, v.q) + std::pow(grad, v.gamma);
            else if constexpr (std::is_same_v<T, H2>)
                return detail::zero_order_power(u, v.q) * std::pow(grad, v.gamma);
            else {
                const double b_du = r > 0.0 ? drift_bx(v.drift, r) * du / r : 0.0;
                return v.amplitude * std::pow(grad, v.gamma) + b_du;
            }
        },
        h);
}

// ---------------------------------------------------------------------------
// Residual reports

// Grid evaluation of an inequality's left-minus-right side.
struct ResidualReport {
    std::vector<double> radii;
    std::vector<double> values;
    double min = std::numeric_limits<double>::infinity();
    double argmin = std::numeric_limits<double>::quiet_NaN();
    std::size_t min_index = 0;
};

inline ResidualReport make_residual_report(std::vector<double> radii, std::vector<double> values) {
    if (radii.size() != values.size() || radii.empty())
        throw std::invalid_argument("ResidualReport: radii/values mismatch");
    ResidualReport rep;
    rep.radii = std::move(radii);
    rep.values = std::move(values);
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
        if (rep.values[i] < rep.min) {
            rep.min = rep.values[i];
            rep.argmin = rep.radii[i];
            rep.min_index = i;
        }
    }
    return rep;
}

inline double max_abs(const ResidualReport& rep) {
    double m = 0.0;
    for (double v : rep.values) m = std::max(m, std::fabs(v));
    return m;
}

// Hessian spectrum of the profile at r, with the removable origin limit
// (tangential eigenvalue -> f''(0)).
inline RadialEigs profile_eigs(const RadialProfile& f, double r, int n) {
    const double fpp = f.deriv2(r);
    if (r > 0.0) return radial_eigs(f.deriv1(r), fpp, r, n);
    return {fpp, fpp, n - 1};
}

// Pointwise residual M_sign(D^2 u)(r) - H(u(r), u'(r), r) per grid radius.
inline ResidualReport residual_grid(const RadialProfile& u, const HamiltonianSpec& ham,
                                    const Ellipticity& ell, int n, Sign sign,
                                    std::span<const double> grid) {
    if (n < 1) throw std::invalid_argument("residual_grid: dimension must be positive");
    validate_hamiltonian(ham);
    if (grid.empty()) throw std::invalid_argument("residual_grid: empty grid");
    if (const auto* h3 = std::get_if<H3>(&ham); h3 && !drift_is_pointwise(h3->drift))
        throw std::invalid_argument("residual_grid: asymptotic drift has no pointwise residual");

    std::vector<double> radii(grid.begin(), grid.end());
    std::vector<double> values(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        const double fu = u.value(r);
        const double du = r > 0.0 ? u.deriv1(r) : 0.0;
        const double lhs = pucci_radial(profile_eigs(u, r, n), ell, sign);
        values[i] = lhs - hamiltonian_value(ham, fu, du, r);
    }
    return make_residual_report(std::move(radii), std::move(values));
}

inline ResidualReport residual_grid(const RadialProfile& u, const HamiltonianSpec& ham,
                                    const Ellipticity& ell, int n, Sign sign) {
    const std::vector<double> grid = default_grid(u);
    return residual_grid(u, ham, ell, n, sign, grid);
}

}  // namespace liouville
