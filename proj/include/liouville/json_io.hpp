#pragma once

// Tagged-union JSON encodings of the domain types ({"variant": ..., fields})
// and a canonical serializer: keys sorted, floats printed with 17 significant
// digits, so repeated runs are byte-identical and diff-friendly.

#include <cstdio>
#include <optional>
#include <string>

#include "json.hpp"
#include "liouville/classify.hpp"
#include "liouville/radial.hpp"
#include "liouville/witness.hpp"

namespace liouville {

// ---------------------------------------------------------------------------
// Canonical dump

namespace detail {

inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";  // JSON has no inf/nan
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void canonical_dump_impl(const nlohmann::json& j, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (j.type()) {
        case value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, val] : j.items()) {  // std::map order: sorted keys
                if (!first) out += ',';
                first = false;
                out += nlohmann::json(key).dump();
                out += ':';
                canonical_dump_impl(val, out);
            }
            out += '}';
            break;
        }
        case value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& val : j) {
                if (!first) out += ',';
                first = false;
                canonical_dump_impl(val, out);
            }
            out += ']';
            break;
        }
        case value_t::number_float:
            out += format_double(j.get<double>());
            break;
        default:
            out += j.dump();  // strings, integers, booleans, null
            break;
    }
}

}  // namespace detail

inline std::string canonical_dump(const nlohmann::json& j) {
    std::string out;
    detail::canonical_dump_impl(j, out);
    return out;
}

// ---------------------------------------------------------------------------
// Encoders

inline nlohmann::json ellipticity_to_json(const Ellipticity& e) {
    return {{"lambda", e.lambda}, {"Lambda", e.Lambda}};
}

inline nlohmann::json drift_to_json(const DriftSpec& d) {
    if (std::holds_alternative<ZeroDrift>(d)) return {{"variant", "zero"}};
    if (const auto* s = std::get_if<ScaledRadialDrift>(&d))
        return {{"variant", "scaled_radial"}, {"c", s->c}};
    return {{"variant", "asymptotic"},
            {"limsup_bx", std::get<AsymptoticDrift>(d).limsup_bx}};
}

inline nlohmann::json profile_to_json(const RadialProfile& f) {
    using P = RadialProfile;
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, P::PowerDecay>)
                return {{"variant", "power_decay"},
                        {"amplitude", v.amplitude},
                        {"delta", v.delta}};
            else if constexpr (std::is_same_v<T, P::SingularPower>)
                return {{"variant", "singular_power"},
                        {"amplitude", v.amplitude},
                        {"nu", v.exponent}};
            else if constexpr (std::is_same_v<T, P::NegLog>)
                return {{"variant", "neg_log"}};
            else if constexpr (std::is_same_v<T, P::Cubic>)
                return {{"variant", "cubic"},
                        {"level", v.level},
                        {"r_inner", v.r_inner},
                        {"r_outer", v.r_outer}};
            else if constexpr (std::is_same_v<T, P::CompApprox>)
                return {{"variant", "comp_approx"},
                        {"theta", v.theta},
                        {"nu", v.exponent},
                        {"r_outer", v.r_outer},
                        {"offset", v.offset}};
            else
                return {{"variant", "affine"},
                        {"scale", v.scale},
                        {"shift", v.shift},
                        {"inner", profile_to_json(*v.inner)}};
        },
        f.variant());
}

inline nlohmann::json hamiltonian_to_json(const HamiltonianSpec& h) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, H1>)
                return {{"variant", "h1"}, {"q", v.q}, {"gamma", v.gamma}};
            else if constexpr (std::is_same_v<T, H2>)
                return {{"variant", "h2"}, {"q", v.q}, {"gamma", v.gamma}};
            else
                return {{"variant", "h3"},
                        {"gamma", v.gamma},
                        {"A", v.amplitude},
                        {"drift", drift_to_json(v.drift)}};
        },
        h);
}

inline nlohmann::json residual_summary_to_json(const ResidualReport& r) {
    return {{"min", r.min}, {"argmin", r.argmin}, {"points", r.radii.size()}};
}

inline nlohmann::json residual_full_to_json(const ResidualReport& r) {
    nlohmann::json j = residual_summary_to_json(r);
    j["radii"] = r.radii;
    j["values"] = r.values;
    return j;
}

inline nlohmann::json witness_to_json(const WitnessReport& w) {
    nlohmann::json j = {{"profile", profile_to_json(w.profile)},
                        {"delta_low", w.delta_low},
                        {"delta_high", w.delta_high},
                        {"delta", w.delta},
                        {"amplitude", w.amplitude},
                        {"residual_min", w.residual.min},
                        {"residual_argmin", w.residual.argmin}};
    j["drift"] = w.drift ? drift_to_json(*w.drift) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json j = {{"outcome", to_string(v.outcome)},
                        {"theorem_ref", v.theorem_ref},
                        {"notes", v.notes}};
    if (v.witness) j["witness"] = witness_to_json(*v.witness);
    return j;
}

// ---------------------------------------------------------------------------
// Decoders

namespace detail {

inline double field_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field: ") + key);
    const auto& v = j.at(key);
    if (!v.is_number()) throw std::invalid_argument(std::string("field not a number: ") + key);
    return v.get<double>();
}

inline std::string field_string(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw std::invalid_argument(std::string("missing string field: ") + key);
    return j.at(key).get<std::string>();
}

}  // namespace detail

inline Ellipticity ellipticity_from_json(const nlohmann::json& j) {
    return {detail::field_number(j, "lambda"), detail::field_number(j, "Lambda")};
}

inline DriftSpec drift_from_json(const nlohmann::json& j) {
    const std::string variant = detail::field_string(j, "variant");
    if (variant == "zero") return ZeroDrift{};
    if (variant == "scaled_radial") return ScaledRadialDrift{detail::field_number(j, "c")};
    if (variant == "asymptotic") return AsymptoticDrift{detail::field_number(j, "limsup_bx")};
    throw std::invalid_argument("unknown drift variant: " + variant);
}

inline RadialProfile profile_from_json(const nlohmann::json& j) {
    const std::string variant = detail::field_string(j, "variant");
    if (variant == "power_decay")
        return RadialProfile::power_decay(detail::field_number(j, "amplitude"),
                                          detail::field_number(j, "delta"));
    if (variant == "singular_power")
        return RadialProfile::singular_power(detail::field_number(j, "amplitude"),
                                             detail::field_number(j, "nu"));
    if (variant == "neg_log") return RadialProfile::neg_log();
    if (variant == "cubic")
        return RadialProfile::cubic(detail::field_number(j, "level"),
                                    detail::field_number(j, "r_inner"),
                                    detail::field_number(j, "r_outer"));
    if (variant == "comp_approx")
        return RadialProfile::comp_approx(
            detail::field_number(j, "theta"), detail::field_number(j, "nu"),
            detail::field_number(j, "r_outer"), detail::field_number(j, "offset"));
    if (variant == "affine") {
        if (!j.contains("inner")) throw std::invalid_argument("affine profile: missing inner");
        return RadialProfile::affine(detail::field_number(j, "scale"),
                                     detail::field_number(j, "shift"),
                                     profile_from_json(j.at("inner")));
    }
    throw std::invalid_argument("unknown profile variant: " + variant);
}

inline HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j) {
    const std::string variant = detail::field_string(j, "variant");
    if (variant == "h1")
        return H1{detail::field_number(j, "q"), detail::field_number(j, "gamma")};
    if (variant == "h2")
        return H2{detail::field_number(j, "q"), detail::field_number(j, "gamma")};
    if (variant == "h3") {
        if (!j.contains("drift")) throw std::invalid_argument("h3: missing drift");
        return H3{detail::field_number(j, "gamma"), detail::field_number(j, "A"),
                  drift_from_json(j.at("drift"))};
    }
    throw std::invalid_argument("unknown hamiltonian variant: " + variant);
}

// Problem file consumed by the `verify` command:
// {profile, hamiltonian, ellipticity, N, sign, grid?}
struct VerifyProblem {
    RadialProfile profile;
    HamiltonianSpec hamiltonian;
    Ellipticity ellipticity;
    int dimension;
    Sign sign;
    std::optional<std::vector<double>> grid;
};

inline VerifyProblem parse_problem(const nlohmann::json& j) {
    for (const char* key : {"profile", "hamiltonian", "ellipticity", "N", "sign"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("problem file: missing field ") + key);

    const std::string sign_str = detail::field_string(j, "sign");
    if (sign_str != "plus" && sign_str != "minus")
        throw std::invalid_argument("problem file: sign must be plus or minus");
    const double n = detail::field_number(j, "N");
    if (n < 1 || n != std::floor(n))
        throw std::invalid_argument("problem file: N must be a positive integer");

    std::optional<std::vector<double>> grid;
    if (j.contains("grid")) {
        if (!j.at("grid").is_array())
            throw std::invalid_argument("problem file: grid must be an array of radii");
        grid = j.at("grid").get<std::vector<double>>();
        if (grid->empty()) throw std::invalid_argument("problem file: empty grid");
    }

    return {profile_from_json(j.at("profile")),
            hamiltonian_from_json(j.at("hamiltonian")),
            ellipticity_from_json(j.at("ellipticity")),
            static_cast<int>(n),
            sign_str == "plus" ? Sign::plus : Sign::minus,
            std::move(grid)};
}

}  // namespace liouville
