#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "decompositions.hpp"
#include "states.hpp"

namespace ghzsep {

// points hold (v, alpha) for the highly symmetric plane (dim 2) or
// (rho_{1,16}, rho_{4,13}, rho_{2,15}) / Omega for the symmetric family (dim 3).
struct BoundarySegment {
    std::string label;
    int dim = 2;
    std::vector<std::array<double, 3>> points;
    std::string source;
    bool physical_face = false;  // p_1 = 0 face rather than a criterion boundary
};

namespace hs {

// v(alpha) on curves KN and LM, alpha(u, v) on the below-diagonal curves VU and ST.
inline double kn_v(double a) { return (18 - a - std::sqrt(std::max(0.0, (a + 42) * (a - 6)))) / 36; }
inline double lm_v(double a) { return (32 - a + std::sqrt(std::max(0.0, (56 - a) * (8 - a)))) / 36; }

inline double vu_alpha(double u, double v) {
    const double a1 = 3 * u + (7 + u) * v, b1 = 4 * u * (4 - 37 * v + 9 * v * v);
    return a1 + std::sqrt(std::max(0.0, a1 * a1 + b1));
}

inline double st_alpha(double u, double v) {
    const double a2 = 4 * u + (7 - u) * v, b2 = 4 * u * (3 * v + 2) * (3 * v + 2);
    return a2 - std::sqrt(std::max(0.0, a2 * a2 - b2));
}

inline double v1(double u) { return (9 - 4 * u - std::sqrt(std::max(0.0, (4 * u + 21) * (4 * u - 3)))) / 18; }
inline double v2(double u) { return (5 * u - 2) / (3 * (1 + u)); }
inline double v3(double u) { return (4 - 3 * u) / (1 + u); }
inline double v4(double u) { return 2.0 / 9 * (4 - u + std::sqrt(std::max(0.0, (7 - u) * (1 - u)))); }

// p_1 = 0 face
inline double alpha_face(double u) { return 14 * u / (1 + u); }

}  // namespace hs

namespace detail {

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i == n - 1 ? b : a + (b - a) * i / (n - 1);
    return out;
}

template <class F>
BoundarySegment sampled(std::string label, std::string source, double t0, double t1, int n, F&& point) {
    BoundarySegment s;
    s.label = std::move(label);
    s.source = std::move(source);
    for (double t : linspace(t0, t1, n)) {
        const auto [v, a] = point(t);
        s.points.push_back({v, a, 0.0});
    }
    return s;
}

}  // namespace detail

// Boundary of the separable region in the (v, alpha) plane at fixed p16, as a closed
// polygon traversed segment by segment.
inline std::vector<BoundarySegment> hs_boundary(double p16, int n) {
    if (!(p16 >= 0 && p16 <= 0.5)) throw ParameterError("p16 must lie in [0, 1/2]");
    if (n < 2) throw ParameterError("need at least 2 samples per segment");
    const double u = 1 - 2 * p16;
    std::vector<BoundarySegment> out;
    auto alpha_line = [](double a) { return [a](double v) { return std::pair{v, a}; }; };
    if (p16 == 0) {
        out.push_back(detail::sampled("GH", "alpha = 8 line, criterion I", 0, 2.0 / 3, n, alpha_line(8)));
        out.push_back(detail::sampled("HJ", "alpha = 4 + 6v line", 2.0 / 3, 0.5, n,
                                      [](double v) { return std::pair{v, 4 + 6 * v}; }));
        out.push_back(detail::sampled("GJ", "alpha = 8 - 2v line", 0.5, 0, n,
                                      [](double v) { return std::pair{v, 8 - 2 * v}; }));
        return out;
    }
    if (p16 > 0.125) {
        out.push_back(detail::sampled("KL", "alpha = 8 line, criterion I", 0, 2.0 / 3, n, alpha_line(8)));
        out.push_back(detail::sampled("LM", "upper criterion IV curve", 8, 6, n,
                                      [](double a) { return std::pair{hs::lm_v(a), a}; }));
        out.push_back(detail::sampled("MN", "alpha = 6 line, criterion I", 1, 1.0 / 3, n, alpha_line(6)));
        out.push_back(detail::sampled("KN", "lower criterion IV curve", 6, 8, n,
                                      [](double a) { return std::pair{hs::kn_v(a), a}; }));
        return out;
    }
    const double af = hs::alpha_face(u);
    out.push_back(detail::sampled("PQ", "alpha = 8 line, criterion I", 0, 2.0 / 3, n, alpha_line(8)));
    out.push_back(detail::sampled("QS", "upper criterion IV curve", 8, 8 * u, n,
                                  [](double a) { return std::pair{hs::lm_v(a), a}; }));
    out.push_back(detail::sampled("ST", "upper below-diagonal curve", hs::v4(u), hs::v3(u), n,
                                  [u](double v) { return std::pair{v, hs::st_alpha(u, v)}; }));
    auto face = detail::sampled("UT", "p1 = 0 physical face", hs::v3(u), hs::v2(u), n, alpha_line(af));
    face.physical_face = true;
    out.push_back(face);
    out.push_back(detail::sampled("UV", "lower below-diagonal curve", hs::v2(u), hs::v1(u), n,
                                  [u](double v) { return std::pair{v, hs::vu_alpha(u, v)}; }));
    out.push_back(detail::sampled("PV", "lower criterion IV curve", 8 * u, 8, n,
                                  [](double a) { return std::pair{hs::kn_v(a), a}; }));
    return out;
}

// Range of sin^2 phi covered by each branch of the below-diagonal family.
inline std::pair<double, double> below_diag_range(double u, CurveVariant v) {
    if (v == CurveVariant::BelowDiagST)
        return {0.0, 0.5 * (2 - u - std::sqrt(std::max(0.0, (1 - u) * (7 - u))))};
    return {0.125 * (4 * u + 1 - std::sqrt(std::max(0.0, (4 * u + 21) * (4 * u - 3)))), 0.5};
}

// (v, alpha) swept by the constructive states as sin^2 phi varies.
inline std::pair<double, double> hs_curve_parametrization(double p16, CurveVariant var, double s) {
    if (!(s >= 0 && s <= 0.5)) throw ParameterError("sin^2 phi must lie in [0, 1/2]");
    if (!(p16 >= 0 && p16 <= 0.5)) throw ParameterError("p16 must lie in [0, 1/2]");
    const double c = 1 - s;
    switch (var) {
        case CurveVariant::LM: return {1 / (1 + s), (14 - 8 * c * c) / (1 + s)};
        case CurveVariant::KN: return {s / (1 + s), (14 * s + 8 * c * c) / (1 + s)};
        default: break;
    }
    const double u = 1 - 2 * p16;
    const double sg = var == CurveVariant::BelowDiagST ? -1.0 : 1.0;
    const double k = c * (8 * s - 1);
    const double alpha = 7 * u * (1 + s + sg * k) / ((1 + s) * u + sg * k);
    const double K = 8 * (1 - 7 * u / alpha) / (1 + s);
    const double R8 = sg * K * c * c;
    return {alpha / 14 * (1 - R8 / u), alpha};
}

inline GhzProbabilities hs_point_state(double p16, double v, double alpha, double tol = 1e-10) {
    return validated(make_highly_symmetric(HighlySymmetricParams::from_v_alpha(p16, v, alpha)), tol);
}

// Meshes of the symmetric-family boundary at fixed Omega. Coordinates are (X, Y, Z) =
// (rho_{1,16}, rho_{4,13}, rho_{2,15}) / Omega.
inline std::vector<BoundarySegment> sym_surface(double Omega, int n) {
    if (!(Omega > 0)) throw ParameterError("Omega must be positive");
    if (n < 2) throw ParameterError("grid needs at least 2 points per side");
    std::vector<BoundarySegment> out;
    const auto g = detail::linspace(-1, 1, n);
    for (int sgn : {+1, -1}) {
        BoundarySegment lo, hi;
        lo.dim = hi.dim = 3;
        lo.label = hi.label = sgn > 0 ? "curvedSurfacePlus" : "curvedSurfaceMinus";
        lo.source = "curved surface, x <= y";
        hi.source = "curved surface, x >= y";
        for (double X : g)
            for (double Y : g) {
                if (X <= Y) lo.points.push_back({X, Y, sgn * surface_low(X, Y)});
                if (X >= Y) hi.points.push_back({X, Y, sgn * surface_high(X, Y)});
            }
        out.push_back(std::move(lo));
        out.push_back(std::move(hi));
    }
    for (int sx : {+1, -1}) {
        BoundarySegment t;
        t.dim = 3;
        t.label = "planeTriangle";
        t.source = sx > 0 ? "plane x = 1" : "plane x = -1";
        // vertices (sx, -sx, 0), (sx, sx, sx), (sx, sx, -sx)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) {
                const double r = double(i) / (n - 1);
                const double Y = -sx + 2 * sx * r;
                const double zmax = 0.5 * (1 + sx * Y);
                const double Z = i == 0 ? 0.0 : zmax * (2.0 * j / i - 1);
                t.points.push_back({double(sx), Y, Z});
            }
        out.push_back(std::move(t));
    }
    for (int sy : {+1, -1})
        for (int sz : {+1, -1}) {
            BoundarySegment p;
            p.dim = 3;
            p.label = "parabola";
            p.source = sy > 0 ? "parabola at y = 1" : "parabola at y = -1";
            for (double X : g) p.points.push_back({X, double(sy), sz * std::sqrt(0.5 * (1 + sy * X))});
            out.push_back(std::move(p));
        }
    return out;
}

}  // namespace ghzsep
