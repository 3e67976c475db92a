#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "states.hpp"
#include "witness.hpp"

namespace ghzsep {

inline constexpr double tau_v = 1e-10;
inline constexpr double rp9_eps = 1e-10;

enum class Case { I, II, III, IV };

inline const char* to_string(Case c) {
    switch (c) {
        case Case::I: return "I";
        case Case::II: return "II";
        case Case::III: return "III";
        default: return "IV";
    }
}

// The four candidate expressions and whether each is a valid lower bound.
struct CaseExpressions {
    std::array<double, 4> value{};
    std::array<bool, 4> applicable{};
};

// Stationary abscissa of the curve branch; applicable iff it lies in [-3,-1].
inline bool curve_branch_applicable(double R, double Rp9) {
    const double t = 3.0 * R + Rp9;
    if (t == 0.0 || R == 0.0) return false;
    const double xs = -9.0 * R / t;
    return xs >= -3.0 - 1e-12 && xs <= -1.0 + 1e-12;
}

inline CaseExpressions case_expressions(double R8, double Rp9, double R15) {
    CaseExpressions e;
    e.value[0] = std::abs(Rp9 - R8 - R15);
    e.value[1] = std::abs(Rp9 / 3.0 + R8 + R15);
    e.applicable[0] = e.applicable[1] = true;
    e.value[2] = R15 != 0.0 ? std::abs(R15 - R8 + Rp9 / 3.0 + Rp9 * Rp9 / (18.0 * R15)) : 0.0;
    e.value[3] = R8 != 0.0 ? std::abs(R8 - R15 + Rp9 / 3.0 + Rp9 * Rp9 / (18.0 * R8)) : 0.0;
    e.applicable[2] = curve_branch_applicable(R15, Rp9);
    e.applicable[3] = curve_branch_applicable(R8, Rp9);
    return e;
}

struct RTilde {
    double value = 0;
    Case which = Case::I;
};

// Written case split on the ratios, widened to the max of every case whose
// condition holds within a small band so boundaries are not undercounted.
inline RTilde r_tilde(double R8, double Rp9, double R15) {
    const auto e = case_expressions(R8, Rp9, R15);
    RTilde out;
    auto take = [&](int k) {
        if (e.applicable[k] && e.value[k] > out.value) {
            out.value = e.value[k];
            out.which = static_cast<Case>(k);
        }
    };
    if (std::abs(Rp9) < rp9_eps) {
        out.value = -1;
        for (int k = 0; k < 4; ++k) take(k);
        return out;
    }
    const double a = R8 / Rp9, b = R15 / Rp9, ab = a * b;
    const double band = 1e-9;
    const bool cI = a <= 1.0 / 6 + band && b <= 1.0 / 6 + band;
    const bool cII = ab >= 1.0 / 36 - band && a > -band && b > -band;
    const bool cIII = b > 1.0 / 6 - band && ab < 1.0 / 36 + band;
    const bool cIV = a > 1.0 / 6 - band && ab < 1.0 / 36 + band;
    out.value = -1;
    if (cI) take(0);
    if (cII) take(1);
    if (cIII) take(2);
    if (cIV) take(3);
    if (out.value < 0)
        for (int k = 0; k < 4; ++k) take(k);
    return out;
}

inline RTilde r_tilde(const PauliCorrelations& c) { return r_tilde(c.R[7], c.Rp9(), c.R[14]); }

inline double l_min_from(double Omega, double Rt) {
    const double den = 1.0 - 16.0 * Omega + Rt;
    return den > 0 ? 1.0 / den : std::numeric_limits<double>::infinity();
}

inline double l_min(const GhzProbabilities& g) {
    const auto x = probabilities_to_elements(g);
    return l_min_from(omega(x), r_tilde(probabilities_to_correlations(g)).value);
}

enum class Verdict { Separable, Entangled, EntangledByNecessity, Undetermined };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Separable: return "Separable";
        case Verdict::Entangled: return "Entangled";
        case Verdict::EntangledByNecessity: return "EntangledByNecessity";
        default: return "Undetermined";
    }
}

struct Margin {
    double value = 0;       // lhs - rhs; <= 0 means satisfied
    bool applicable = true;
    bool violated() const { return applicable && value > 0; }
};

struct CriterionReport {
    double omega = 0;
    double r_tilde = 0;
    double l_min = 0;
    std::array<Margin, 4> margins{};
    Case active_case = Case::I;
    Verdict verdict = Verdict::Undetermined;
    bool symmetric_family = false;
    WitnessParams matched_witness;
};

inline double criterion_curve_margin(double Rself, double Rother, double Rp9, double Omega) {
    if (Rself == 0.0) return -std::numeric_limits<double>::infinity();
    return std::abs(Rself - Rother + Rp9 / 3.0 + Rp9 * Rp9 / (18.0 * Rself)) - 16.0 * Omega;
}

// Anti-diagonal direction (x, 1, y) realizing a given case.
inline std::array<double, 2> case_direction(Case k, double R8, double Rp9, double R15) {
    switch (k) {
        case Case::I: return {-1.0, -1.0};
        case Case::II: return {3.0, 3.0};
        case Case::III: {
            const double x = -9.0 * R15 / (3.0 * R15 + Rp9);
            return {x, 3.0 + 0.5 * (9.0 / x - x)};
        }
        default: {
            const double y = -9.0 * R8 / (3.0 * R8 + Rp9);
            return {3.0 + 0.5 * (9.0 / y - y), y};
        }
    }
}

// Witness with g_tilde = 1 whose value on the state is 1 - 1/l_min.
inline WitnessParams matched_witness(const GhzProbabilities& g) {
    const auto c = probabilities_to_correlations(g);
    const auto x = probabilities_to_elements(g);
    const double R8 = c.R[7], Rp9 = c.Rp9(), R15 = c.R[14];
    const auto rt = r_tilde(R8, Rp9, R15);
    const auto [dx, dy] = case_direction(rt.which, R8, Rp9, R15);
    const double s = dx * R8 + Rp9 + dy * R15 >= 0 ? 1.0 : -1.0;
    const double gt = g_tilde(dx, 1.0, dy);
    int best = 0;
    for (int i = 1; i < 8; ++i)
        if (x.d[i] < x.d[best]) best = i;
    std::array<double, 7> diag{};
    for (int k = 0; k < 8; ++k)
        if (vertex_pair(k) == best + 1) diag = polyhedron_vertex(k);
    return WitnessParams::sector(diag, s * dx / gt, s / gt, s * dy / gt);
}

inline CriterionReport criteria(const GhzProbabilities& g, double tol = tau_v) {
    const auto c = probabilities_to_correlations(g);
    const auto x = probabilities_to_elements(g);
    const double R8 = c.R[7], Rp9 = c.Rp9(), R15 = c.R[14];
    CriterionReport r;
    r.omega = omega(x);
    const auto rt = r_tilde(R8, Rp9, R15);
    r.r_tilde = rt.value;
    r.active_case = rt.which;
    r.l_min = l_min_from(r.omega, rt.value);

    const auto e = case_expressions(R8, Rp9, R15);
    r.margins[0] = {std::abs(x.a[0]) - r.omega, true};
    r.margins[1] = {std::abs(x.a[3] + x.a[5] + x.a[6]) / 3.0 - r.omega, true};
    r.margins[2] = {criterion_curve_margin(R15, R8, Rp9, r.omega), e.applicable[2]};
    r.margins[3] = {criterion_curve_margin(R8, R15, Rp9, r.omega), e.applicable[3]};

    bool violated = false;
    for (int k = 0; k < 4; ++k) {
        const double t = k < 2 ? tol : 16.0 * tol;
        if (r.margins[k].applicable && r.margins[k].value > t) violated = true;
    }
    r.symmetric_family = is_symmetric(c);
    if (r.symmetric_family) r.verdict = violated ? Verdict::Entangled : Verdict::Separable;
    else r.verdict = violated ? Verdict::EntangledByNecessity : Verdict::Undetermined;
    r.matched_witness = matched_witness(g);
    return r;
}

struct PptResult {
    bool holds = false;
    double margin = 0;  // max|a| - min d
};

inline PptResult ppt_criterion(const GhzProbabilities& g, double tol = tau_v) {
    const auto x = probabilities_to_elements(g);
    double amax = 0;
    for (double a : x.a) amax = std::max(amax, std::abs(a));
    const double m = amax - omega(x);
    return {m <= tol, m};
}

inline bool kay_condition(const PauliCorrelations& c) {
    const double R8 = c.R[7], R9 = c.R[8], R15 = c.R[14];
    return R9 * R15 <= 0 && R9 * R8 <= 0;
}

}  // namespace ghzsep
