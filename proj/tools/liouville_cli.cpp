// Command-line front end: classification, witness synthesis, pointwise
// verification, (q, gamma) sweeps, monotonicity and Lyapunov scans, and the
// transform checks.  Output is canonical JSON (sorted keys, 17 significant
// digits) or CSV; byte-identical across runs for identical flags.
//
// Exit codes: 0 verified / answered, 1 violation detected, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "liouville/annulus.hpp"
#include "liouville/classify.hpp"
#include "liouville/json_io.hpp"
#include "liouville/transform.hpp"
#include "liouville/witness.hpp"

namespace {

using namespace liouville;

constexpr double verify_floor = -1e-12;
constexpr double chain_floor = -1e-9;
constexpr double identity_band = 1e-9;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit(const nlohmann::json& j) { std::cout << canonical_dump(j) << "\n"; }

// "a:b:n" -> n evenly spaced values from a to b inclusive
std::vector<double> parse_range(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    long n = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &n, &tail) != 3 || n < 1 ||
        !std::isfinite(lo) || !std::isfinite(hi))
        throw UsageError("bad range '" + text + "', expected a:b:n with n >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (long i = 0; i < n; ++i)
        out[std::size_t(i)] = lo + (hi - lo) * double(i) / double(n - 1);
    return out;
}

struct DriftFlags {
    std::string zero;  // "zero" when --drift zero given
    double scaled_c = std::numeric_limits<double>::quiet_NaN();
    double limsup = std::numeric_limits<double>::quiet_NaN();

    void attach(CLI::App* cmd) {
        cmd->add_option("--drift", zero, "drift family: 'zero'")
            ->check(CLI::IsMember({"zero"}));
        cmd->add_option("--drift-scaled-c", scaled_c,
                        "scaled radial drift b(x) = c x/(1+|x|^2)");
        cmd->add_option("--drift-limsup", limsup, "asymptotic drift, limsup of b(x).x");
    }

    std::optional<DriftSpec> get() const {
        int given = int(!zero.empty()) + int(!std::isnan(scaled_c)) + int(!std::isnan(limsup));
        if (given == 0) return std::nullopt;
        if (given > 1) throw UsageError("give exactly one of --drift/--drift-scaled-c/--drift-limsup");
        if (!zero.empty()) return DriftSpec{ZeroDrift{}};
        if (!std::isnan(scaled_c)) return DriftSpec{ScaledRadialDrift{scaled_c}};
        return DriftSpec{AsymptoticDrift{limsup}};
    }
};

OperatorKind parse_operator(const std::string& s) {
    if (s == "plus") return OperatorKind::pucci_plus;
    if (s == "minus") return OperatorKind::pucci_minus;
    if (s == "generic") return OperatorKind::generic_elliptic;
    if (s == "plap") return OperatorKind::normalized_p_laplacian;
    throw UsageError("unknown operator '" + s + "'");
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

// Shared classify/sweep problem flags.
struct ProblemFlags {
    int dimension = 0;
    double lambda = std::numeric_limits<double>::quiet_NaN();
    double Lambda = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
    std::string op_name;
    std::string ham_name;

    void attach(CLI::App* cmd) {
        cmd->add_option("--N", dimension, "space dimension")->required();
        cmd->add_option("--lambda", lambda, "lower ellipticity bound");
        cmd->add_option("--Lambda", Lambda, "upper ellipticity bound");
        cmd->add_option("--p", p, "normalized p-Laplacian exponent (operator plap)");
        cmd->add_option("--operator", op_name, "plus | minus | generic | plap")->required();
        cmd->add_option("--ham", ham_name, "h1 | h2 | h3")->required();
    }

    OperatorKind op() const { return parse_operator(op_name); }

    Ellipticity ellipticity() const {
        if (op() == OperatorKind::normalized_p_laplacian) {
            if (std::isnan(p)) throw UsageError("operator plap needs --p");
            return p_laplacian_ellipticity(p);
        }
        if (std::isnan(lambda) || std::isnan(Lambda))
            throw UsageError("need --lambda and --Lambda (or --operator plap with --p)");
        return {lambda, Lambda};
    }

    ProblemInstance instance(HamiltonianSpec ham) const {
        if (op() == OperatorKind::normalized_p_laplacian)
            return make_p_laplacian_instance(dimension, p, std::move(ham));
        return {dimension, ellipticity(), op(), std::move(ham), 0.0};
    }
};

// ---------------------------------------------------------------------------

int run_classify(const ProblemFlags& pf, double q, double gamma, double amplitude,
                 const DriftFlags& drift, bool has_q, bool has_gamma, bool has_amplitude) {
    HamiltonianSpec ham = H1{0, 0};
    if (pf.ham_name == "h1" || pf.ham_name == "h2") {
        if (!has_q || !has_gamma) throw UsageError(pf.ham_name + " needs --q and --gamma");
        ham = pf.ham_name == "h1" ? HamiltonianSpec{H1{q, gamma}} : HamiltonianSpec{H2{q, gamma}};
    } else if (pf.ham_name == "h3") {
        if (!has_gamma || !has_amplitude) throw UsageError("h3 needs --gamma and --A");
        auto d = drift.get();
        if (!d) throw UsageError("h3 needs a drift (--drift zero, --drift-scaled-c or --drift-limsup)");
        ham = H3{gamma, amplitude, *d};
    } else {
        throw UsageError("unknown hamiltonian '" + pf.ham_name + "'");
    }
    emit(verdict_to_json(classify(pf.instance(std::move(ham)))));
    return 0;
}

int run_sweep(const ProblemFlags& pf, const std::string& q_range, const std::string& g_range,
              bool verify_witnesses, const std::string& out_path) {
    if (pf.ham_name != "h1" && pf.ham_name != "h2")
        throw UsageError("sweep supports --ham h1 or h2");
    const std::vector<double> qs = parse_range(q_range);
    const std::vector<double> gs = parse_range(g_range);
    const Ellipticity ell = pf.ellipticity();
    const double beta = ell.beta(pf.dimension);

    std::ostringstream csv;
    csv << "q,gamma,beta,verdict,theorem_ref,witness_delta,witness_amplitude,residual_min\n";
    for (double q : qs) {
        for (double g : gs) {
            HamiltonianSpec ham = pf.ham_name == "h1" ? HamiltonianSpec{H1{q, g}}
                                                      : HamiltonianSpec{H2{q, g}};
            const Verdict v = classify(pf.instance(std::move(ham)));
            csv << fmt(q) << ',' << fmt(g) << ',' << fmt(beta) << ',' << to_string(v.outcome)
                << ',' << v.theorem_ref << ',';
            if (v.witness) csv << fmt(v.witness->delta);
            csv << ',';
            if (v.witness) csv << fmt(v.witness->amplitude);
            csv << ',';
            if (v.witness && verify_witnesses) csv << fmt(v.witness->residual.min);
            csv << '\n';
        }
    }

    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw UsageError("cannot write file: " + out_path);
        out << csv.str();
    }
    return 0;
}

int run_counterexample(int n, double lambda, double Lambda, const std::string& ham, double q,
                       double gamma, double delta, bool singular, bool has_q, bool has_gamma,
                       bool has_delta) {
    const Ellipticity ell{lambda, Lambda};
    std::optional<WitnessReport> w;
    if (ham == "h1") {
        if (!has_q || !has_gamma) throw UsageError("h1 needs --q and --gamma");
        w = h1_witness(q, gamma, ell, n);
    } else if (ham == "h2") {
        if (!has_gamma) throw UsageError("h2 needs --gamma");
        if (singular) {
            if (has_q && q != 0.0) throw UsageError("--singular is the q = 0 family");
            w = singular_h2_witness(gamma, ell, n);
        } else {
            w = h2_witness(has_q ? q : 0.0, gamma, ell, n);
        }
    } else if (ham == "h3") {
        if (!has_delta) throw UsageError("h3 needs --delta");
        w = drift_witness(ell, n, delta);  // input errors surface as exit 2
    } else {
        throw UsageError("counterexample supports --ham h1, h2 or h3");
    }

    if (!w) {
        emit({{"feasible", false}});
        return 0;
    }
    nlohmann::json j = witness_to_json(*w);
    j["feasible"] = true;
    emit(j);
    return 0;
}

int run_verify(const std::string& path, bool full) {
    const VerifyProblem prob = parse_problem(load_json_file(path));
    ResidualReport rep;
    if (prob.grid)
        rep = residual_grid(prob.profile, prob.hamiltonian, prob.ellipticity, prob.dimension,
                            prob.sign, *prob.grid);
    else
        rep = residual_grid(prob.profile, prob.hamiltonian, prob.ellipticity, prob.dimension,
                            prob.sign);

    const bool ok = rep.min >= verify_floor;
    nlohmann::json j = full ? residual_full_to_json(rep) : residual_summary_to_json(rep);
    j["verified"] = ok;
    emit(j);
    return ok ? 0 : 1;
}

int run_monotonic(const std::string& profile_path, double exponent, double r_min, double r_max,
                  std::size_t points, bool full) {
    const RadialProfile f = profile_from_json(load_json_file(profile_path));
    const std::vector<double> grid = log_grid(r_min, r_max, points);
    const MonotonicityReport rep = hadamard_check(f, exponent, grid);

    nlohmann::json j = {{"exponent", rep.exponent},
                        {"points", rep.radii.size()},
                        {"nondecreasing", rep.nondecreasing()},
                        {"violations", rep.violations}};
    if (full) {
        j["radii"] = rep.radii;
        j["values"] = rep.values;
    }
    emit(j);
    return rep.nondecreasing() ? 0 : 1;
}

int run_lyapunov(int n, double lambda, double Lambda, const DriftFlags& drift, double r_max) {
    auto d = drift.get();
    if (!d) throw UsageError("lyapunov needs a drift (--drift zero, --drift-scaled-c or --drift-limsup)");
    const LyapunovScan scan = lyapunov_scan(*d, Ellipticity{lambda, Lambda}, n, r_max);
    nlohmann::json j = {{"admissible", scan.admissible}};
    j["from_radius"] = scan.from_radius ? nlohmann::json(*scan.from_radius) : nlohmann::json(nullptr);
    emit(j);
    return scan.admissible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liouville properties of extremal-operator inequalities: classify, "
                 "synthesize witnesses, verify residuals"};
    app.require_subcommand(1);

    // classify -----------------------------------------------------------
    auto* classify_cmd = app.add_subcommand("classify", "classify one problem instance");
    ProblemFlags classify_pf;
    classify_pf.attach(classify_cmd);
    double cl_q = 0, cl_gamma = 0, cl_amp = 0;
    DriftFlags cl_drift;
    auto* cl_q_opt = classify_cmd->add_option("--q", cl_q, "zero-order exponent");
    auto* cl_g_opt = classify_cmd->add_option("--gamma", cl_gamma, "gradient exponent");
    auto* cl_a_opt = classify_cmd->add_option("--A", cl_amp, "gradient term amplitude (h3)");
    cl_drift.attach(classify_cmd);

    // sweep ----------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "CSV sweep over a (q, gamma) lattice");
    ProblemFlags sweep_pf;
    sweep_pf.attach(sweep_cmd);
    std::string q_range, g_range, sweep_out;
    bool verify_witnesses = false;
    sweep_cmd->add_option("--q-range", q_range, "a:b:n")->required();
    sweep_cmd->add_option("--gamma-range", g_range, "a:b:n")->required();
    sweep_cmd->add_flag("--verify-witnesses", verify_witnesses,
                        "emit the verified residual minimum on fails rows");
    sweep_cmd->add_option("--output", sweep_out, "write CSV here instead of stdout");

    // counterexample -------------------------------------------------------
    auto* ce_cmd = app.add_subcommand("counterexample", "synthesize an explicit witness");
    int ce_n = 0;
    double ce_lambda = 0, ce_Lambda = 0, ce_q = 0, ce_gamma = 0, ce_delta = 0;
    std::string ce_ham;
    bool ce_singular = false;
    ce_cmd->add_option("--N", ce_n, "space dimension")->required();
    ce_cmd->add_option("--lambda", ce_lambda, "lower ellipticity bound")->required();
    ce_cmd->add_option("--Lambda", ce_Lambda, "upper ellipticity bound")->required();
    ce_cmd->add_option("--ham", ce_ham, "h1 | h2 | h3")->required();
    auto* ce_q_opt = ce_cmd->add_option("--q", ce_q, "zero-order exponent");
    auto* ce_g_opt = ce_cmd->add_option("--gamma", ce_gamma, "gradient exponent");
    auto* ce_d_opt = ce_cmd->add_option("--delta", ce_delta, "decay exponent (h3 drift witness)");
    ce_cmd->add_flag("--singular", ce_singular, "singular q = 0 family on r > 0 (h2)");

    // verify -----------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "pointwise residual check of a problem file");
    std::string verify_path;
    bool verify_full = false;
    verify_cmd->add_option("problem", verify_path, "JSON problem file")->required();
    verify_cmd->add_flag("--full", verify_full, "include per-radius residuals");

    // monotonic ---------------------------------------------------------------
    auto* mono_cmd = app.add_subcommand("monotonic", "m(R) R^exponent monotonicity report");
    std::string mono_profile;
    double mono_exp = 0, mono_rmin = 1.0, mono_rmax = 1e6;
    std::size_t mono_points = 128;
    bool mono_full = false;
    mono_cmd->add_option("--profile", mono_profile, "JSON profile file")->required();
    mono_cmd->add_option("--exponent", mono_exp, "power of R")->required();
    mono_cmd->add_option("--r-min", mono_rmin, "grid start (default 1)");
    mono_cmd->add_option("--r-max", mono_rmax, "grid end (default 1e6)");
    mono_cmd->add_option("--points", mono_points, "grid size (default 128)");
    mono_cmd->add_flag("--full", mono_full, "include the sampled values");

    // lyapunov -----------------------------------------------------------------
    auto* lyap_cmd = app.add_subcommand("lyapunov", "drift admissibility scan for -log|x|");
    int ly_n = 0;
    double ly_lambda = 0, ly_Lambda = 0, ly_rmax = 1e6;
    DriftFlags ly_drift;
    lyap_cmd->add_option("--N", ly_n, "space dimension")->required();
    lyap_cmd->add_option("--lambda", ly_lambda, "lower ellipticity bound")->required();
    lyap_cmd->add_option("--Lambda", ly_Lambda, "upper ellipticity bound")->required();
    ly_drift.attach(lyap_cmd);
    lyap_cmd->add_option("--r-max", ly_rmax, "scan horizon (default 1e6)");

    // transform ------------------------------------------------------------------
    auto* tr_cmd = app.add_subcommand("transform", "change-of-variable checks");
    tr_cmd->require_subcommand(1);

    auto* hc_cmd = tr_cmd->add_subcommand("hopf-cole", "v = lambda(1 - e^(-u/lambda))");
    double hc_u = 0, hc_lambda = 1.0;
    bool hc_inverse = false;
    hc_cmd->add_option("--u", hc_u, "input value")->required();
    hc_cmd->add_option("--lambda", hc_lambda, "lower ellipticity bound")->required();
    hc_cmd->add_flag("--inverse", hc_inverse, "apply the inverse map");

    auto* pw_cmd = tr_cmd->add_subcommand("power", "u = v^b exponent algebra");
    double pw_q = 0, pw_gamma = 0, pw_b = 0;
    pw_cmd->add_option("--q", pw_q)->required();
    pw_cmd->add_option("--gamma", pw_gamma)->required();
    pw_cmd->add_option("--b", pw_b)->required();

    auto* rg_cmd = tr_cmd->add_subcommand("region", "transferability of the product region");
    double rg_q = 0, rg_gamma = 0, rg_lambda = 0, rg_Lambda = 0;
    int rg_n = 0;
    rg_cmd->add_option("--q", rg_q)->required();
    rg_cmd->add_option("--gamma", rg_gamma)->required();
    rg_cmd->add_option("--N", rg_n)->required();
    rg_cmd->add_option("--lambda", rg_lambda)->required();
    rg_cmd->add_option("--Lambda", rg_Lambda)->required();

    auto* mq_cmd = tr_cmd->add_subcommand("mixquad", "v = integral of exp(-s^(q+1)/((q+1)lambda))");
    double mq_u = 0, mq_q = 0, mq_lambda = 1.0;
    mq_cmd->add_option("--u", mq_u)->required();
    mq_cmd->add_option("--q", mq_q)->required();
    mq_cmd->add_option("--lambda", mq_lambda)->required();

    auto* lcp_cmd = tr_cmd->add_subcommand("lcp", "signed-power monotonicity inequality");
    double lcp_u = 0, lcp_v = 0, lcp_q = 1.0;
    lcp_cmd->add_option("--u", lcp_u)->required();
    lcp_cmd->add_option("--v", lcp_v)->required();
    lcp_cmd->add_option("--exponent", lcp_q, "q >= 1")->required();

    auto* ch_cmd = tr_cmd->add_subcommand("chain", "operator chain residual under hopf-cole");
    std::string ch_profile;
    int ch_n = 0;
    double ch_lambda = 0, ch_Lambda = 0;
    DriftFlags ch_drift;
    ch_cmd->add_option("--profile", ch_profile, "JSON profile file")->required();
    ch_cmd->add_option("--N", ch_n)->required();
    ch_cmd->add_option("--lambda", ch_lambda)->required();
    ch_cmd->add_option("--Lambda", ch_Lambda)->required();
    ch_drift.attach(ch_cmd);

    auto* ex_cmd = tr_cmd->add_subcommand("exp", "v = e^(-u) pointwise identity check");
    std::string ex_profile;
    int ex_n = 0;
    double ex_fconst = 0.0;
    DriftFlags ex_drift;
    ex_cmd->add_option("--profile", ex_profile, "JSON profile file")->required();
    ex_cmd->add_option("--N", ex_n)->required();
    ex_cmd->add_option("--f-const", ex_fconst, "constant right-hand side (default 0)");
    ex_drift.attach(ex_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(classify_cmd))
            return run_classify(classify_pf, cl_q, cl_gamma, cl_amp, cl_drift,
                                cl_q_opt->count() > 0, cl_g_opt->count() > 0,
                                cl_a_opt->count() > 0);
        if (app.got_subcommand(sweep_cmd))
            return run_sweep(sweep_pf, q_range, g_range, verify_witnesses, sweep_out);
        if (app.got_subcommand(ce_cmd))
            return run_counterexample(ce_n, ce_lambda, ce_Lambda, ce_ham, ce_q, ce_gamma,
                                      ce_delta, ce_singular, ce_q_opt->count() > 0,
                                      ce_g_opt->count() > 0, ce_d_opt->count() > 0);
        if (app.got_subcommand(verify_cmd)) return run_verify(verify_path, verify_full);
        if (app.got_subcommand(mono_cmd))
            return run_monotonic(mono_profile, mono_exp, mono_rmin, mono_rmax, mono_points,
                                 mono_full);
        if (app.got_subcommand(lyap_cmd))
            return run_lyapunov(ly_n, ly_lambda, ly_Lambda, ly_drift, ly_rmax);

        if (app.got_subcommand(tr_cmd)) {
            if (tr_cmd->got_subcommand(hc_cmd)) {
                const double v = hc_inverse ? hopf_cole_inv(hc_u, hc_lambda)
                                            : hopf_cole(hc_u, hc_lambda);
                emit({{"value", v}});
                return 0;
            }
            if (tr_cmd->got_subcommand(pw_cmd)) {
                const ExponentTriple t = power_transform(pw_q, pw_gamma, pw_b);
                emit({{"b", t.b}, {"s", t.s}, {"z", t.z}});
                return 0;
            }
            if (tr_cmd->got_subcommand(rg_cmd)) {
                const RegionTransfer t =
                    region_transfer_check(rg_q, rg_gamma, Ellipticity{rg_lambda, rg_Lambda}, rg_n);
                nlohmann::json j = {{"transferable", t.transferable}};
                j["delta"] = t.delta ? nlohmann::json(*t.delta) : nlohmann::json(nullptr);
                if (t.exponents) {
                    j["s"] = t.exponents->s;
                    j["z"] = t.exponents->z;
                }
                emit(j);
                return 0;
            }
            if (tr_cmd->got_subcommand(mq_cmd)) {
                emit({{"value", mixquad_transform(mq_u, mq_q, mq_lambda)}});
                return 0;
            }
            if (tr_cmd->got_subcommand(lcp_cmd)) {
                const bool ok = lcp_inequality_check(lcp_u, lcp_v, lcp_q);
                emit({{"holds", ok}});
                return ok ? 0 : 1;
            }
            if (tr_cmd->got_subcommand(ch_cmd)) {
                const RadialProfile f = profile_from_json(load_json_file(ch_profile));
                const DriftSpec d = ch_drift.get().value_or(DriftSpec{ZeroDrift{}});
                const ResidualReport rep =
                    hopf_cole_chain_check(f, d, Ellipticity{ch_lambda, ch_Lambda}, ch_n);
                const bool ok = rep.min >= chain_floor;
                nlohmann::json j = residual_summary_to_json(rep);
                j["verified"] = ok;
                emit(j);
                return ok ? 0 : 1;
            }
            if (tr_cmd->got_subcommand(ex_cmd)) {
                const RadialProfile f = profile_from_json(load_json_file(ex_profile));
                const DriftSpec d = ex_drift.get().value_or(DriftSpec{ZeroDrift{}});
                const std::vector<double> grid = default_grid(f);
                const ResidualReport rep = euclidean_exp_transform_check(
                    f, d, [ex_fconst](double) { return ex_fconst; }, ex_n, grid);
                const double dev = max_abs(rep);
                const bool ok = dev <= identity_band;
                emit({{"max_abs", dev}, {"points", rep.radii.size()}, {"verified", ok}});
                return ok ? 0 : 1;
            }
        }
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
