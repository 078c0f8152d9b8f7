#pragma once

// Decision procedure mapping a problem instance to holds / fails /
// conjectured / open, with the citation tag of the deciding statement.
// Every "fails" verdict carries a grid-verified witness; counterexamples
// never transfer to generic uniformly elliptic operators, so those cells
// come back open instead.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "liouville/pucci.hpp"
#include "liouville/radial.hpp"
#include "liouville/witness.hpp"

namespace liouville {

enum class OperatorKind { pucci_plus, pucci_minus, generic_elliptic, normalized_p_laplacian };
enum class Outcome { holds, fails, conjectured, open };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::holds: return "holds";
        case Outcome::fails: return "fails";
        case Outcome::conjectured: return "conjectured";
        case Outcome::open: return "open";
    }
    return "open";
}

// Citation tags carried by verdicts; stable strings, part of the output
// contract.
namespace cite {
inline constexpr const char* theorem_2_1 = "Theorem 2.1";
inline constexpr const char* remark_2_2 = "Remark 2.2";
inline constexpr const char* remark_2_3 = "Remark 2.3";
inline constexpr const char* theorem_3_1 = "Theorem 3.1";
inline constexpr const char* remark_3_2 = "Remark 3.2";
inline constexpr const char* conjecture_3_3 = "Conjecture 3.3";
inline constexpr const char* remark_3_4 = "Remark 3.4";
inline constexpr const char* theorem_4_1 = "Theorem 4.1";
inline constexpr const char* remark_4_3 = "Remark 4.3";
inline constexpr const char* theorem_4_4 = "Theorem 4.4";
inline constexpr const char* remark_4_5 = "Remark 4.5";
inline constexpr const char* remark_5_2 = "Remark 5.2";
inline constexpr const char* corollary_5_5 = "Corollary 5.5";
inline constexpr const char* corollary_5_6 = "Corollary 5.6";
}  // namespace cite

struct ProblemInstance {
    int dimension;
    Ellipticity ell;
    OperatorKind op;
    HamiltonianSpec ham;
    double p = 0.0;  // normalized p-Laplacian exponent, meaningful for that operator only
};

// min/max of {1/p, (p-1)/p}: the eigenvalue bounds of the gradient-dependent
// diffusion matrix of the normalized p-Laplacian.
inline Ellipticity p_laplacian_ellipticity(double p) {
    if (!std::isfinite(p) || !(p > 1.0))
        throw std::invalid_argument("p_laplacian_ellipticity: need p > 1");
    return {std::min(1.0 / p, (p - 1.0) / p), std::max(1.0 / p, (p - 1.0) / p)};
}

inline ProblemInstance make_p_laplacian_instance(int n, double p, HamiltonianSpec ham) {
    if (n < 1) throw std::invalid_argument("ProblemInstance: dimension must be positive");
    return {n, p_laplacian_ellipticity(p), OperatorKind::normalized_p_laplacian, std::move(ham),
            p};
}

struct Verdict {
    Outcome outcome;
    std::string theorem_ref;
    std::optional<WitnessReport> witness;  // present exactly when outcome == fails
    std::string notes;
};

namespace detail {

inline void check_instance(const ProblemInstance& inst) {
    if (inst.dimension < 1)
        throw std::invalid_argument("ProblemInstance: dimension must be positive");
    validate_hamiltonian(inst.ham);
}

inline Verdict verdict(Outcome o, std::string ref, std::string notes) {
    return {o, std::move(ref), std::nullopt, std::move(notes)};
}

}  // namespace detail

// u^q + |Du|^gamma.  Thresholds live at q = d/(d-2) and gamma = d/(d-1)
// where d is the effective dimension of the comparison operator (beta for
// the maximal / generic case, alpha for the minimal one).
inline Verdict classify_h1(const ProblemInstance& inst) {
    detail::check_instance(inst);
    const auto& h = std::get<H1>(inst.ham);
    const bool minimal = inst.op == OperatorKind::pucci_minus;
    const double d =
        minimal ? inst.ell.alpha(inst.dimension) : inst.ell.beta(inst.dimension);
    const char* holds_ref = minimal ? cite::remark_2_3 : cite::theorem_2_1;

    if (d <= 2.0)
        return detail::verdict(Outcome::holds, cite::remark_5_2,
                               "effective dimension <= 2: supersolutions of the comparison "
                               "operator are already constant");
    if (h.q <= d / (d - 2.0))
        return detail::verdict(Outcome::holds, holds_ref,
                               "zero-order absorption alone forces the Liouville property");
    if (h.gamma > 1.0 && h.gamma <= d / (d - 1.0))
        return detail::verdict(Outcome::holds, holds_ref,
                               "slightly superlinear gradient absorption extends the range");
    if (h.gamma > d / (d - 1.0)) {
        if (inst.op == OperatorKind::pucci_plus) {
            auto w = h1_witness(h.q, h.gamma, inst.ell, inst.dimension);
            return {Outcome::fails, cite::remark_2_2, std::move(*w),
                    "explicit decaying supersolution in the super-threshold region"};
        }
        if (inst.op == OperatorKind::generic_elliptic)
            return detail::verdict(Outcome::open, "",
                                   "the maximal-operator counterexample does not transfer to "
                                   "every uniformly elliptic operator");
        return detail::verdict(Outcome::open, "",
                               "no counterexample is known for the minimal operator here");
    }
    return detail::verdict(Outcome::open, "",
                           "gradient growth at most linear with supercritical q: no deciding "
                           "statement");
}

// u^q |Du|^gamma.  Failure region (beta-2) q + (beta-1) gamma > beta for the
// maximal operator; the closed region is only conjectured (boundary
// included), and minimal-operator instances route through comparison
// results.
inline Verdict classify_h2(const ProblemInstance& inst) {
    detail::check_instance(inst);
    const auto& h = std::get<H2>(inst.ham);
    const int n = inst.dimension;

    if (inst.op == OperatorKind::pucci_minus) {
        const double alpha = inst.ell.alpha(n);
        if ((n - 2) * h.q + (n - 1) * h.gamma <= double(n))
            return detail::verdict(Outcome::holds, cite::remark_3_4,
                                   "comparison with the Laplacian settles the region");
        if (double(n) <= inst.ell.Lambda / inst.ell.lambda + 1.0)
            return detail::verdict(Outcome::holds, cite::remark_3_4,
                                   "alpha <= 2: minimal-operator supersolutions alone are "
                                   "constant, any exponents");
        if ((alpha - 2.0) * h.q + (alpha - 1.0) * h.gamma <= alpha)
            return detail::verdict(Outcome::conjectured, cite::conjecture_3_3,
                                   "minimal-operator variant of the conjectured region");
        return detail::verdict(Outcome::open, "", "no deciding statement for this cell");
    }

    const double beta = inst.ell.beta(n);
    if (beta <= 2.0)
        return detail::verdict(Outcome::holds, cite::remark_5_2,
                               "effective dimension <= 2: supersolutions of the comparison "
                               "operator are already constant");

    const double region = (beta - 2.0) * h.q + (beta - 1.0) * h.gamma;
    if (region > beta) {
        if (inst.op == OperatorKind::pucci_plus) {
            if (h.gamma > 1.0) {
                auto w = h2_witness(h.q, h.gamma, inst.ell, inst.dimension);
                return {Outcome::fails, cite::theorem_3_1, std::move(*w),
                        "failure region taken as (beta-2) q + (beta-1) gamma > beta, the "
                        "constructive direction; the boundary stays conjectured"};
            }
            return detail::verdict(Outcome::open, "",
                                   "witness family needs gamma > 1; no construction for this "
                                   "cell");
        }
        return detail::verdict(Outcome::open, "",
                               "the maximal-operator counterexample does not transfer to "
                               "every uniformly elliptic operator");
    }
    return detail::verdict(Outcome::conjectured, cite::conjecture_3_3,
                           "inside the conjectured Liouville region (boundary included)");
}

// A |Du|^gamma with drift: the limsup of b(x).x against lambda - Lambda(N-1)
// (maximal/generic) or Lambda - lambda(N-1) (minimal).  A sign-indefinite
// gradient term is only covered for gamma = 2; H == 0 bypasses the gating.
inline Verdict classify_h3(const ProblemInstance& inst) {
    detail::check_instance(inst);
    const auto& h = std::get<H3>(inst.ham);
    const int n = inst.dimension;
    const double limsup = drift_limsup_bx(h.drift);

    const bool minimal = inst.op == OperatorKind::pucci_minus;
    const double threshold = minimal ? inst.ell.Lambda - inst.ell.lambda * (n - 1)
                                     : inst.ell.lambda - inst.ell.Lambda * (n - 1);
    const char* holds_ref = minimal ? cite::theorem_4_4 : cite::theorem_4_1;

    const bool gated_in = h.amplitude == 0.0 || (h.amplitude > 0.0 && h.gamma > 0.0) ||
                          h.gamma == 2.0;
    if (!gated_in)
        return detail::verdict(Outcome::open, cite::remark_4_3,
                               "repulsive gradient term with gamma != 2: no deciding "
                               "statement");

    if (limsup <= threshold)
        return detail::verdict(Outcome::holds, holds_ref,
                               "drift condition met: limsup b(x).x <= " +
                                   std::string(minimal ? "Lambda - lambda(N-1)"
                                                       : "lambda - Lambda(N-1)"));

    if (h.amplitude == 0.0 && inst.op == OperatorKind::pucci_plus) {
        const double beta = inst.ell.beta(n);
        if (const auto* s = std::get_if<ScaledRadialDrift>(&h.drift);
            s && beta > 2.0 && s->c < 0.0) {
            const double delta = s->c / inst.ell.lambda + beta - 2.0;  // c = lambda(2-beta+delta)
            if (delta > 0.0 && delta < beta - 2.0) {
                return {Outcome::fails, cite::remark_4_5,
                        drift_witness(inst.ell, n, delta),
                        "drift threshold is sharp: bounded nonconstant supersolution beyond "
                        "it"};
            }
        }
    }
    return detail::verdict(Outcome::open, "", "drift condition not met; no deciding statement");
}

// Normalized p-Laplacian instances classify through the derived ellipticity;
// the operator is specific, so nothing ever fails outright here.
inline Verdict classify_p_laplacian(const ProblemInstance& inst) {
    detail::check_instance(inst);
    if (!std::isfinite(inst.p) || !(inst.p > 1.0))
        throw std::invalid_argument("classify_p_laplacian: need p > 1");
    const int n = inst.dimension;
    const Ellipticity ell = p_laplacian_ellipticity(inst.p);
    const double beta = ell.beta(n);

    if (const auto* h = std::get_if<H1>(&inst.ham)) {
        if (beta <= 2.0)
            return detail::verdict(Outcome::holds, cite::remark_5_2,
                                   "derived effective dimension <= 2");
        if (h->q <= beta / (beta - 2.0))
            return detail::verdict(Outcome::holds, cite::corollary_5_5,
                                   "zero-order region via the derived ellipticity");
        if (h->gamma > 1.0 && h->gamma <= beta / (beta - 1.0))
            return detail::verdict(Outcome::holds, cite::corollary_5_5,
                                   "gradient absorption region via the derived ellipticity");
        return detail::verdict(Outcome::open, "",
                               "no operator-specific counterexample; extremal-operator "
                               "witnesses do not transfer");
    }
    if (const auto* h = std::get_if<H2>(&inst.ham)) {
        if (beta <= 2.0)
            return detail::verdict(Outcome::holds, cite::remark_5_2,
                                   "derived effective dimension <= 2");
        const double region = (beta - 2.0) * h->q + (beta - 1.0) * h->gamma;
        if (region > beta)
            return detail::verdict(Outcome::open, "",
                                   "maximal-operator failure region; counterexamples do not "
                                   "transfer to the normalized p-Laplacian");
        return detail::verdict(Outcome::conjectured, cite::conjecture_3_3,
                               "conjectured region via the derived ellipticity");
    }

    const auto& h = std::get<H3>(inst.ham);
    const double limsup = drift_limsup_bx(h.drift);
    const bool gated_in = h.amplitude == 0.0 || (h.amplitude > 0.0 && h.gamma > 0.0) ||
                          h.gamma == 2.0;
    if (!gated_in)
        return detail::verdict(Outcome::open, cite::remark_4_3,
                               "repulsive gradient term with gamma != 2: no deciding "
                               "statement");
    const double threshold = inst.p > 2.0 ? 1.0 - double(n) * (inst.p - 1.0) / inst.p
                                          : 1.0 - double(n) / inst.p;
    if (limsup < threshold)
        return detail::verdict(Outcome::holds, cite::corollary_5_6,
                               "drift condition met for the normalized p-Laplacian");
    return detail::verdict(Outcome::open, "", "drift condition not met; no deciding statement");
}

inline Verdict classify(const ProblemInstance& inst) {
    if (inst.op == OperatorKind::normalized_p_laplacian) return classify_p_laplacian(inst);
    if (std::holds_alternative<H1>(inst.ham)) return classify_h1(inst);
    if (std::holds_alternative<H2>(inst.ham)) return classify_h2(inst);
    return classify_h3(inst);
}

}  // namespace liouville
