#pragma once

#include <array>
#include <cmath>
#include <string>

#include "optimize.hpp"
#include "states.hpp"

namespace ghzsep {

inline constexpr double pi = 3.14159265358979323846;

// M[0] is M_1, same Pauli order as the correlations.
struct WitnessParams {
    std::array<double, 15> M{};

    double at(int i) const { return M.at(i - 1); }

    // M_9 .. M_14 all equal.
    bool symmetric_sector() const {
        for (int i = 9; i < 14; ++i)
            if (M[i] != M[8]) return false;
        return true;
    }

    static WitnessParams sector(const std::array<double, 7>& diag, double M8, double M9, double M15) {
        WitnessParams w;
        for (int k = 0; k < 7; ++k) w.M[k] = diag[k];
        w.M[7] = M8;
        for (int i = 8; i < 14; ++i) w.M[i] = M9;
        w.M[14] = M15;
        return w;
    }
};

struct ProductState {
    std::array<double, 4> theta{};
    std::array<double, 4> phi{};
};

inline double dot(const WitnessParams& w, const PauliCorrelations& c) {
    double s = 0;
    for (int i = 0; i < 15; ++i) s += w.M[i] * c.R[i];
    return s;
}

// Phase polynomial multiplying t1 t2 t3 t4.
inline double g_phase(const WitnessParams& w, const std::array<double, 4>& phi) {
    std::array<double, 4> c, s;
    for (int k = 0; k < 4; ++k) {
        c[k] = std::cos(phi[k]);
        s[k] = std::sin(phi[k]);
    }
    double g = 0;
    for (int i = 7; i < 15; ++i) {
        double term = w.M[i];
        for (int q = 0; q < 4; ++q) term *= pauli_names[i][q] == 'X' ? c[q] : s[q];
        g += term;
    }
    return g;
}

inline double f_eval(const ProductState& st, const WitnessParams& w) {
    std::array<double, 4> z, t;
    for (int k = 0; k < 4; ++k) {
        z[k] = std::cos(st.theta[k]);
        t[k] = std::sin(st.theta[k]);
    }
    const auto& M = w.M;
    const double diag = M[0] * z[2] * z[3] + M[1] * z[1] * z[3] + M[2] * z[1] * z[2] +
                        M[3] * z[0] * z[3] + M[4] * z[0] * z[2] + M[5] * z[0] * z[1] +
                        M[6] * z[0] * z[1] * z[2] * z[3];
    return diag + g_phase(w, st.phi) * t[0] * t[1] * t[2] * t[3];
}

// Coefficients of the (phi+, phi-) form after maximizing over phi3, phi4.
struct GPhaseCoefficients {
    std::array<double, 8> A{};

    static GPhaseCoefficients from(const WitnessParams& w) {
        static constexpr int H[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
        const auto& M = w.M;
        const double u[4] = {M[7], -M[8], -M[13], M[14]};
        const double v[4] = {M[9], M[10], M[11], M[12]};
        GPhaseCoefficients g;
        for (int c = 0; c < 4; ++c) {
            double a = 0, b = 0;
            for (int r = 0; r < 4; ++r) {
                a += u[r] * H[r][c];
                b += v[r] * H[r][c];
            }
            g.A[c] = 0.25 * a;
            g.A[4 + c] = 0.25 * b;
        }
        return g;
    }

    // max over phi3, phi4 of g at phi1 = (p+m)/2, phi2 = (p-m)/2
    double g1(double phip, double phim) const {
        const double cp = std::cos(phip), cm = std::cos(phim);
        const double sp = std::sin(phip), sm = std::sin(phim);
        return std::hypot(A[0] * cp + A[2] * cm, A[4] * sp - A[6] * sm) +
               std::hypot(A[1] * cp + A[3] * cm, A[5] * sp - A[7] * sm);
    }
};

// g_tilde = max over phases, for M_9 = ... = M_14.
inline double g_tilde(double M8, double M9, double M15) {
    double best = std::max({std::abs(M8), std::abs(M9), std::abs(M15)});
    const double den = 6.0 * M9 - M8 - M15;
    if (M9 != 0.0 && den != 0.0) {
        const double c = (M8 - M15) / den;
        if (std::abs(c) <= 1.0) {
            const double st = (M9 > 0 ? 1.0 : -1.0) * (9.0 * M9 * M9 - M8 * M15) / den;
            best = std::max(best, st);
        }
    }
    return best;
}

inline double g_tilde(const WitnessParams& w) { return g_tilde(w.M[7], w.M[8], w.M[14]); }

// Closed region in (M8/M9, M15/M9) where the stationary value is the maximum.
inline bool delta_region_contains(double x, double y) {
    if (x > 3 || y > 3 || x < -3 || y < -3) return false;
    if (x <= -1 && y < 3 + 0.5 * (9 / x - x)) return false;
    if (y <= -1 && x < 3 + 0.5 * (9 / y - y)) return false;
    return true;
}

// Vertex k of the polyhedron: bits of k pick j1, j2, j3 = -1.
inline std::array<int, 3> vertex_signs(int k) {
    return {(k & 4) ? -1 : 1, (k & 2) ? -1 : 1, (k & 1) ? -1 : 1};
}

inline std::array<double, 7> polyhedron_vertex(int k) {
    const auto [j1, j2, j3] = vertex_signs(k);
    return {double(j1), double(j2), double(-j1 * j2), double(j3), double(-j1 * j3),
            double(-j2 * j3), double(j1 * j2 * j3)};
}

// Value of the diagonal Z-string part on computational basis state b.
inline double diagonal_value(const std::array<double, 7>& m, int b) {
    double s = 0;
    for (int k = 0; k < 7; ++k) {
        double z = 1;
        for (int q = 0; q < 4; ++q)
            if (pauli_names[k][q] == 'Z') z *= ((b >> (3 - q)) & 1) ? -1.0 : 1.0;
        s += m[k] * z;
    }
    return s;
}

// Matrix index i (1..8) of the pair where vertex k's diagonal operator equals -7.
inline int vertex_pair(int k) {
    const auto P = polyhedron_vertex(k);
    for (int b = 0; b < 8; ++b)
        if (diagonal_value(P, b) < -6.5) return b + 1;
    return 0;
}

struct PolyhedronTest {
    std::array<double, 8> lambda{};
    bool inside = false;
};

// Character inversion: lambda_k = (1 + P_k . m)/8.
inline PolyhedronTest polyhedron_membership(const std::array<double, 7>& m, double tau = 1e-12) {
    PolyhedronTest r;
    r.inside = true;
    for (int k = 0; k < 8; ++k) {
        const auto P = polyhedron_vertex(k);
        double s = 1.0;
        for (int i = 0; i < 7; ++i) s += P[i] * m[i];
        r.lambda[k] = s / 8.0;
        if (r.lambda[k] < -tau) r.inside = false;
    }
    return r;
}

// Remaining product-state objective after maximizing over theta4 and all phases.
inline double f2(const std::array<double, 3>& th, const WitnessParams& w, double gt) {
    const double z1 = std::cos(th[0]), z2 = std::cos(th[1]), z3 = std::cos(th[2]);
    const double t = std::sin(th[0]) * std::sin(th[1]) * std::sin(th[2]);
    const auto& M = w.M;
    const double a = M[3] * z1 + M[1] * z2 + M[0] * z3 + M[6] * z1 * z2 * z3;
    return M[5] * z1 * z2 + M[4] * z1 * z3 + M[2] * z2 * z3 + std::hypot(a, gt * t);
}

struct LambdaOptions {
    int grid = 11;           // G^3 starting grid
    int refine = 16;         // best grid points polished
    int phase_grid = 48;     // phase grid for general witnesses
    opt::AscentOptions ascent{0.2, 1e-12, 500};
};

enum class LambdaMethod { Analytic, Numeric };

struct LambdaResult {
    double value = 0;
    LambdaMethod method = LambdaMethod::Analytic;
};

// Phase maximum for any M_8..M_15 via the largest singular value of the 2x2 form.
inline double g_max_general(const WitnessParams& w, int n = 48) {
    const auto& M = w.M;
    auto sv = [&](double p1, double p2) {
        const double c1 = std::cos(p1), s1 = std::sin(p1), c2 = std::cos(p2), s2 = std::sin(p2);
        const double b00 = M[7] * c1 * c2 + M[13] * s1 * s2, b01 = M[9] * c1 * s2 + M[11] * s1 * c2;
        const double b10 = M[10] * c1 * s2 + M[12] * s1 * c2, b11 = M[8] * c1 * c2 + M[14] * s1 * s2;
        const double f = b00 * b00 + b01 * b01 + b10 * b10 + b11 * b11;
        const double det = b00 * b11 - b01 * b10;
        return std::sqrt(0.5 * (f + std::sqrt(std::max(0.0, f * f - 4 * det * det))));
    };
    std::vector<double> vals(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vals[static_cast<std::size_t>(i * n + j)] = sv(2 * pi * i / n, 2 * pi * j / n);
    double best = 0;
    for (auto idx : opt::top_k(vals, 8)) {
        std::array<double, 2> x{2 * pi * double(idx / std::size_t(n)) / n, 2 * pi * double(idx % std::size_t(n)) / n};
        const std::array<opt::Box, 2> box{};
        best = std::max(best, opt::coordinate_ascent(
                                  [&](const std::array<double, 2>& y) { return sv(y[0], y[1]); }, x, box,
                                  {2 * pi / n, 1e-12, 500}));
    }
    return best;
}

inline double f2_max(const WitnessParams& w, double gt, const LambdaOptions& o) {
    const int G = std::max(2, o.grid);
    std::vector<double> vals(static_cast<std::size_t>(G * G * G));
    auto angle = [&](int i) { return pi * i / (G - 1); };
    for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b)
            for (int c = 0; c < G; ++c)
                vals[static_cast<std::size_t>((a * G + b) * G + c)] = f2({angle(a), angle(b), angle(c)}, w, gt);
    double best = -INFINITY;
    const std::array<opt::Box, 3> box{opt::Box{0, pi}, opt::Box{0, pi}, opt::Box{0, pi}};
    auto obj = [&](const std::array<double, 3>& th) { return f2(th, w, gt); };
    for (auto idx : opt::top_k(vals, static_cast<std::size_t>(o.refine))) {
        const int c = int(idx % G), b = int((idx / G) % G), a = int(idx / (G * G));
        std::array<double, 3> x{angle(a), angle(b), angle(c)};
        auto ao = o.ascent;
        ao.step = pi / (G - 1);
        best = std::max(best, opt::coordinate_ascent(obj, x, box, ao));
    }
    return best;
}

// Largest mean of M over product states.
inline LambdaResult lambda_product_max(const WitnessParams& w, const LambdaOptions& o = {}) {
    if (w.symmetric_sector()) {
        const double gt = g_tilde(w);
        if (gt > 0) {
            std::array<double, 7> m;
            for (int k = 0; k < 7; ++k) m[k] = w.M[k] / gt;
            if (polyhedron_membership(m).inside) return {gt, LambdaMethod::Analytic};
        }
        return {std::max(gt, f2_max(w, gt, o)), LambdaMethod::Numeric};
    }
    const double gm = g_max_general(w, o.phase_grid);
    return {std::max(gm, f2_max(w, gm, o)), LambdaMethod::Numeric};
}

inline double witness_value(const PauliCorrelations& c, const WitnessParams& w, double Lambda) {
    return Lambda - dot(w, c);
}

inline double witness_value(const PauliCorrelations& c, const WitnessParams& w,
                            const LambdaOptions& o = {}) {
    return witness_value(c, w, lambda_product_max(w, o).value);
}

}  // namespace ghzsep
