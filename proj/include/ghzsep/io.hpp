#pragma once

#include <cmath>
#include <json.hpp>
#include <string>

#include "decompositions.hpp"
#include "matching.hpp"
#include "states.hpp"
#include "witness.hpp"

namespace ghzsep::io {

using nlohmann::json;

// JSON has no infinities; non-finite values are written as null.
inline json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <std::size_t N>
std::array<double, N> read_array(const json& j, const char* what) {
    if (!j.is_array() || j.size() != N)
        throw ParameterError(std::string(what) + " must be an array of " + std::to_string(N) + " numbers");
    std::array<double, N> a;
    for (std::size_t i = 0; i < N; ++i) a[i] = j[i].get<double>();
    return a;
}

inline GhzProbabilities parse_state(const json& j, double tol = tau_p) {
    static const char* keys[] = {"probabilities", "correlations", "werner", "highly_symmetric", "symmetric"};
    int found = 0;
    for (auto k : keys) found += j.contains(k);
    if (found != 1) throw ParameterError("state needs exactly one of probabilities/correlations/werner/highly_symmetric/symmetric");
    if (j.contains("probabilities")) {
        GhzProbabilities g;
        g.p = read_array<16>(j["probabilities"], "probabilities");
        return validated(g, tol);
    }
    if (j.contains("correlations")) {
        PauliCorrelations c;
        c.R = read_array<15>(j["correlations"].at("R"), "correlations.R");
        return validated(correlations_to_probabilities(c), tol);
    }
    if (j.contains("werner")) return make_werner(j["werner"].at("p").get<double>());
    if (j.contains("highly_symmetric")) {
        const auto& h = j["highly_symmetric"];
        return validated(make_highly_symmetric(HighlySymmetricParams::from_v_alpha(
                             h.at("p16").get<double>(), h.at("v").get<double>(), h.at("alpha").get<double>())),
                         tol);
    }
    const auto& s = j["symmetric"];
    SymmetricParams sp;
    sp.p1 = s.at("p1").get<double>();
    sp.p2 = s.at("p2").get<double>();
    sp.p4 = s.at("p4").get<double>();
    sp.p13 = s.at("p13").get<double>();
    sp.p15 = s.at("p15").get<double>();
    sp.p16 = s.at("p16").get<double>();
    return make_symmetric(sp);
}

inline json to_json(const GhzProbabilities& g) { return json{{"probabilities", g.p}}; }

inline json to_json(const WitnessParams& w) { return json{{"M", w.M}}; }

inline WitnessParams parse_witness(const json& j) {
    WitnessParams w;
    w.M = read_array<15>(j.at("M"), "M");
    return w;
}

inline json to_json(const CriterionReport& r, const GhzProbabilities& g) {
    static const char* names[] = {"I", "II", "III", "IV"};
    json m = json::object(), app = json::object();
    for (int k = 0; k < 4; ++k) {
        m[names[k]] = number(r.margins[k].value);
        app[names[k]] = r.margins[k].applicable;
    }
    const auto ppt = ppt_criterion(g);
    return json{{"omega", r.omega},
                {"r_tilde", r.r_tilde},
                {"case", to_string(r.active_case)},
                {"l_min", number(r.l_min)},
                {"margins", m},
                {"applicable", app},
                {"verdict", to_string(r.verdict)},
                {"symmetric_family", r.symmetric_family},
                {"ppt", json{{"holds", ppt.holds}, {"margin", ppt.margin}}},
                {"kay", kay_condition(probabilities_to_correlations(g))},
                {"witness", to_json(r.matched_witness)}};
}

inline std::string basis_label(int b) {
    std::string s(4, '0');
    for (int q = 0; q < 4; ++q)
        if ((b >> (3 - q)) & 1) s[static_cast<std::size_t>(q)] = '1';
    return s;
}

inline json to_json(const SeparableDecomposition& d) {
    json terms = json::array();
    for (const auto& t : d.terms) {
        if (t.basis) terms.push_back({{"w", t.w}, {"basis", basis_label(t.index)}});
        else terms.push_back({{"w", t.w}, {"theta", t.ps.theta}, {"phi", t.ps.phi}});
    }
    return json{{"terms", terms}, {"target_residual", number(d.target_residual)}};
}

inline SeparableDecomposition parse_decomposition(const json& j) {
    SeparableDecomposition d;
    for (const auto& t : j.at("terms")) {
        Term term;
        term.w = t.at("w").get<double>();
        if (t.contains("basis")) {
            const auto s = t["basis"].get<std::string>();
            if (s.size() != 4 || s.find_first_not_of("01") != std::string::npos)
                throw ParameterError("basis label must be four characters of 0/1");
            term.basis = true;
            term.index = std::stoi(s, nullptr, 2);
        } else {
            term.ps.theta = read_array<4>(t.at("theta"), "theta");
            term.ps.phi = read_array<4>(t.at("phi"), "phi");
        }
        d.terms.push_back(term);
    }
    if (j.contains("target_residual") && j["target_residual"].is_number())
        d.target_residual = j["target_residual"].get<double>();
    return d;
}

inline json to_json(const VerifyReport& r) {
    return json{{"weight_sum", r.weight_sum}, {"min_weight", r.min_weight},     {"purity_defect", r.purity_defect},
                {"off_x", r.off_x},           {"imag", r.imag},                 {"min_eigenvalue", r.min_eigenvalue},
                {"residual", r.residual},     {"l_min", number(r.l_min)},        {"ok", r.ok()}};
}

}  // namespace ghzsep::io
