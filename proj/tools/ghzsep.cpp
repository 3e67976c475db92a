// ghzsep: command-line front end.
//
// Exit codes: classify returns 0 Separable, 2 Entangled / EntangledByNecessity,
// 3 Undetermined. Every command returns 1 on bad input or a failed check.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ghzsep/ghzsep.hpp"
#include "ghzsep/io.hpp"

using namespace ghzsep;
using io::json;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
    std::ifstream f;
    std::istream* in = &std::cin;
    if (path != "-") {
        f.open(path);
        if (!f) throw Failure("cannot open " + path);
        in = &f;
    }
    try {
        return json::parse(*in);
    } catch (const json::exception& e) {
        throw Failure("malformed JSON in " + path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw Failure("cannot write " + out);
    f << text;
}

std::string fmt(double x) {
    if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

SeparableDecomposition construct(const std::string& name, const std::vector<double>& a) {
    auto need = [&](std::size_t lo, std::size_t hi = 0) {
        if (a.size() < lo || a.size() > std::max(lo, hi))
            throw ParameterError(name + " takes " + std::to_string(lo) +
                                 (hi > lo ? "-" + std::to_string(hi) : "") + " parameters");
    };
    auto sign = [](double s) { return s < 0 ? -1 : 1; };
    if (name == "rho3") return need(2), rho3(a[0], sign(a[1]));
    if (name == "rho4") return need(3), rho4(a[0], a[1], sign(a[2]));
    if (name == "line_plus") return need(3), line_state(a[0], a[1], a[2], LineBranch::Plus);
    if (name == "line_minus") return need(3), line_state(a[0], a[1], a[2], LineBranch::Minus);
    if (name == "rho_pm") return need(2), rho_pm(a[0], sign(a[1]));
    if (name == "rho5") return need(2), rho5(a[0], sign(a[1]));
    static const std::map<std::string, CurveVariant> curves{{"curve_LM", CurveVariant::LM},
                                                            {"curve_KN", CurveVariant::KN},
                                                            {"curve_ST", CurveVariant::BelowDiagST},
                                                            {"curve_VU", CurveVariant::BelowDiagVU}};
    if (auto it = curves.find(name); it != curves.end()) {
        need(2, 3);
        return a.size() == 3 ? curve_state(a[0], it->second, a[1], a[2]) : curve_state(a[0], it->second, a[1]);
    }
    static const std::map<std::string, SymVariant> sym{{"sym_half_pi", SymVariant::HalfPi},
                                                       {"sym_zero", SymVariant::Zero},
                                                       {"sym_mirror_half_pi", SymVariant::MirrorHalfPi},
                                                       {"sym_mirror_zero", SymVariant::MirrorZero}};
    if (auto it = sym.find(name); it != sym.end()) return need(2), sym_boundary_state(a[0], a[1], it->second);
    if (name == "sym_point") return need(4), symmetric_point_decomposition(a[0], a[1], a[2], a[3]);
    throw ParameterError("unknown construction " + name);
}

struct CheckSummary {
    std::string name;
    int trials = 0;
    double worst = 0;
    double tol = 0;
    int failures = 0;
    json to_json() const {
        return json{{"check", name},    {"trials", trials},          {"worst", worst},
                    {"tol", tol},       {"failures", failures},      {"pass", failures == 0}};
    }
};

CheckSummary run_check(const std::string& which, int trials, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    CheckSummary s{which, trials, 0, tol, 0};
    std::vector<double> err;
    if (which == "check-gtilde") {
        std::vector<WitnessParams> ws;
        for (int i = 0; i < trials; ++i) ws.push_back(oracle::random_sector_witness(rng));
        err = opt::parallel_map<double>(ws.size(), [&](std::size_t i) {
            return std::abs(g_tilde(ws[i]) - oracle::numeric_g_max(ws[i]));
        });
    } else if (which == "check-lambda") {
        std::vector<WitnessParams> ws;
        for (int i = 0; i < trials; ++i) ws.push_back(oracle::random_polyhedron_witness(rng));
        err = opt::parallel_map<double>(ws.size(), [&](std::size_t i) {
            return std::abs(oracle::numeric_lambda(ws[i]) - g_tilde(ws[i]));
        });
    } else if (which == "check-rtilde") {
        std::uniform_real_distribution<double> U(-1, 1);
        std::vector<std::array<double, 3>> rs;
        for (int i = 0; i < trials; ++i) rs.push_back({U(rng), i % 20 == 0 ? 0.0 : 6 * U(rng), U(rng)});
        err = opt::parallel_map<double>(rs.size(), [&](std::size_t i) {
            const auto& r = rs[i];
            return std::abs(r_tilde(r[0], r[1], r[2]).value - oracle::numeric_r_tilde(r[0], r[1], r[2]));
        });
    } else if (which == "check-ppt") {
        std::vector<GhzProbabilities> gs;
        for (int i = 0; i < trials; ++i) gs.push_back(oracle::random_ghz_diagonal(rng));
        // err = 1 on disagreement between the closed-form PPT test and the dense spectra
        err = opt::parallel_map<double>(gs.size(), [&](std::size_t i) {
            const bool dense_ok = oracle::ppt_min_eigenvalue(gs[i]) >= -tol;
            return ppt_criterion(gs[i], tol).holds == dense_ok ? 0.0 : 1.0;
        });
    } else {
        throw ParameterError("unknown check " + which);
    }
    const bool counts = which == "check-ppt";  // worst is then the disagreement count
    for (double e : err) {
        s.worst = counts ? s.worst + e : std::max(s.worst, e);
        if (counts ? e > 0 : !(e <= s.tol)) ++s.failures;
    }
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Four-qubit GHZ-diagonal full-separability toolkit"};
    app.require_subcommand(1);
    std::string out;
    app.add_option("--out", out, "Write output to FILE instead of stdout");
    app.fallthrough();  // --out may follow the subcommand

    std::string state_path = "-";
    double tol = tau_v, input_tol = tau_p;
    auto* classify = app.add_subcommand("classify", "Criterion report for a state");
    classify->add_option("state", state_path, "State JSON file ('-' for stdin)")->required();
    classify->add_option("--tol", tol, "Verdict tolerance on the margins")->capture_default_str();
    classify->add_option("--input-tol", input_tol, "Probability validation tolerance")->capture_default_str();

    int grid = 11;
    auto* witness = app.add_subcommand("witness", "Matched witness for a state, with its Lambda");
    witness->add_option("state", state_path, "State JSON file")->required();
    witness->add_option("--grid", grid, "Theta grid for numeric Lambda")->capture_default_str();

    auto* boundary = app.add_subcommand("boundary", "Sampled separable-set boundaries");
    boundary->require_subcommand(1);
    boundary->fallthrough();
    std::string format = "csv";
    double p16 = 0, omega_v = 1.0 / 16;
    int samples = 100, mesh = 50;
    bool with_states = false;
    auto* fig2 = boundary->add_subcommand("fig2", "Highly symmetric family in the (v, alpha) plane");
    fig2->add_option("--p16", p16)->required();
    fig2->add_option("--samples", samples, "Points per segment")->capture_default_str();
    fig2->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    fig2->add_flag("--with-states", with_states, "Attach GHZ weights of every point (json only)");
    auto* fig3 = boundary->add_subcommand("fig3", "Symmetric family surfaces at fixed Omega");
    fig3->add_option("--omega", omega_v)->capture_default_str();
    fig3->add_option("--grid", mesh, "Grid points per side")->capture_default_str();
    fig3->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    std::string construction, target_path;
    std::vector<double> params;
    auto* decompose = app.add_subcommand("decompose", "Explicit product-state decomposition");
    decompose->add_option("--construction", construction,
                          "rho3 rho4 line_plus line_minus rho_pm rho5 curve_LM curve_KN curve_ST curve_VU "
                          "sym_half_pi sym_zero sym_mirror_half_pi sym_mirror_zero sym_point")
        ->required();
    decompose->add_option("--params", params, "Construction parameters")->delimiter(',');
    decompose->add_option("--target", target_path, "State JSON; fills target_residual");

    std::string decomp_path;
    double verify_tol = 1e-9;
    auto* verify_cmd = app.add_subcommand("verify", "Check a decomposition against a target state");
    verify_cmd->add_option("decomposition", decomp_path)->required();
    verify_cmd->add_option("--target", target_path)->required();
    verify_cmd->add_option("--tol", verify_tol, "Entrywise residual tolerance")->capture_default_str();

    auto* oracle_cmd = app.add_subcommand("oracle", "Randomized cross-checks of the closed forms");
    oracle_cmd->require_subcommand(1);
    oracle_cmd->fallthrough();
    int trials = 100;
    std::uint64_t seed = 1;
    double check_tol = -1;
    for (const char* name : {"check-gtilde", "check-lambda", "check-rtilde", "check-ppt"}) {
        auto* c = oracle_cmd->add_subcommand(name);
        c->add_option("--trials", trials)->capture_default_str();
        c->add_option("--seed", seed)->capture_default_str();
        c->add_option("--tol", check_tol, "Tolerance (default per check)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*classify) {
            const auto g = io::parse_state(read_json(state_path), input_tol);
            const auto r = criteria(g, tol);
            emit(io::to_json(r, g).dump(2) + "\n", out);
            switch (r.verdict) {
                case Verdict::Separable: return 0;
                case Verdict::Undetermined: return 3;
                default: return 2;
            }
        }
        if (*witness) {
            const auto g = io::parse_state(read_json(state_path));
            const auto w = matched_witness(g);
            LambdaOptions lo;
            lo.grid = grid;
            const auto lam = lambda_product_max(w, lo);
            auto j = io::to_json(w);
            j["lambda"] = lam.value;
            j["method"] = lam.method == LambdaMethod::Analytic ? "analytic" : "numeric";
            j["value"] = witness_value(probabilities_to_correlations(g), w, lam.value);
            j["l_min"] = io::number(l_min(g));
            emit(j.dump(2) + "\n", out);
            return 0;
        }
        if (*fig2) {
            const auto segs = hs_boundary(p16, samples);
            std::ostringstream s;
            if (format == "csv") {
                s << "label,v,alpha,l_min\n";
                for (const auto& seg : segs)
                    for (const auto& p : seg.points)
                        s << seg.label << ',' << fmt(p[0]) << ',' << fmt(p[1]) << ','
                          << fmt(l_min(hs_point_state(p16, p[0], p[1]))) << '\n';
            } else {
                json arr = json::array();
                for (const auto& seg : segs) {
                    json pts = json::array();
                    for (const auto& p : seg.points) {
                        const auto st = hs_point_state(p16, p[0], p[1]);
                        json q{{"v", p[0]}, {"alpha", p[1]}, {"l_min", io::number(l_min(st))}};
                        if (with_states) q["probabilities"] = st.p;
                        pts.push_back(q);
                    }
                    arr.push_back({{"label", seg.label}, {"source", seg.source},
                                   {"physical_face", seg.physical_face}, {"points", pts}});
                }
                s << json{{"p16", p16}, {"segments", arr}}.dump(2) << '\n';
            }
            emit(s.str(), out);
            return 0;
        }
        if (*fig3) {
            const auto segs = sym_surface(omega_v, mesh);
            std::ostringstream s;
            auto lm = [&](const std::array<double, 3>& p) {
                return l_min(symmetric_point_state(omega_v, p[0], p[1], p[2]));
            };
            if (format == "csv") {
                s << "label,x,y,z,l_min\n";
                for (const auto& seg : segs)
                    for (const auto& p : seg.points)
                        s << seg.label << ',' << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]) << ','
                          << fmt(lm(p)) << '\n';
            } else {
                json arr = json::array();
                for (const auto& seg : segs) {
                    json pts = json::array();
                    for (const auto& p : seg.points) pts.push_back({p[0], p[1], p[2], io::number(lm(p))});
                    arr.push_back({{"label", seg.label}, {"source", seg.source}, {"points", pts}});
                }
                s << json{{"omega", omega_v}, {"columns", {"x", "y", "z", "l_min"}}, {"segments", arr}}.dump(2)
                  << '\n';
            }
            emit(s.str(), out);
            return 0;
        }
        if (*decompose) {
            auto d = construct(construction, params);
            if (!target_path.empty()) d.target_residual = verify(d, io::parse_state(read_json(target_path))).residual;
            emit(io::to_json(d).dump(2) + "\n", out);
            return 0;
        }
        if (*verify_cmd) {
            const auto d = io::parse_decomposition(read_json(decomp_path));
            const auto r = verify(d, io::parse_state(read_json(target_path)));
            auto j = io::to_json(r);
            j["ok"] = r.ok(verify_tol);
            emit(j.dump(2) + "\n", out);
            return r.ok(verify_tol) ? 0 : 1;
        }
        for (auto* c : oracle_cmd->get_subcommands()) {
            const std::string name = c->get_name();
            double t = check_tol;
            if (t < 0) t = name == "check-lambda" ? 1e-5 : (name == "check-ppt" ? 1e-10 : 1e-6);
            const auto s = run_check(name, trials, seed, t);
            emit(s.to_json().dump(2) + "\n", out);
            return s.failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
