#include <gtest/gtest.h>

#include <random>

#include "ghzsep/boundaries.hpp"
#include "ghzsep/matching.hpp"

using namespace ghzsep;

namespace {

const BoundarySegment& find(const std::vector<BoundarySegment>& segs, const std::string& label) {
    for (const auto& s : segs)
        if (s.label == label) return s;
    throw std::runtime_error("missing segment " + label);
}

// l_min of the state reconstructed from (v, alpha).
double lmin_at(double p16, double v, double a) { return l_min(hs_point_state(p16, v, a)); }

}  // namespace

TEST(HsBoundary, KlmnEndpoints) {
    const auto segs = hs_boundary(0.3, 50);
    ASSERT_EQ(segs.size(), 4u);
    const auto& kl = find(segs, "KL");
    EXPECT_NEAR(kl.points.front()[0], 0, 1e-15);  // K
    EXPECT_NEAR(kl.points.front()[1], 8, 1e-15);
    EXPECT_NEAR(kl.points.back()[0], 2.0 / 3, 1e-15);  // L
    const auto& mn = find(segs, "MN");
    EXPECT_NEAR(mn.points.front()[0], 1, 1e-15);  // M
    EXPECT_NEAR(mn.points.front()[1], 6, 1e-15);
    EXPECT_NEAR(mn.points.back()[0], 1.0 / 3, 1e-15);  // N
    EXPECT_NEAR(hs::kn_v(6), 1.0 / 3, 1e-15);
    EXPECT_NEAR(hs::kn_v(8), 0, 1e-15);
    EXPECT_NEAR(hs::lm_v(6), 1, 1e-15);
    EXPECT_NEAR(hs::lm_v(8), 2.0 / 3, 1e-15);
}

TEST(HsBoundary, TriangleAtZero) {
    const auto segs = hs_boundary(0, 20);
    ASSERT_EQ(segs.size(), 3u);
    for (const auto& p : find(segs, "HJ").points) EXPECT_NEAR(p[1], 4 + 6 * p[0], 1e-14);
    for (const auto& p : find(segs, "GJ").points) EXPECT_NEAR(p[1], 8 - 2 * p[0], 1e-14);
    const auto& hj = find(segs, "HJ");
    EXPECT_NEAR(hj.points.front()[0], 2.0 / 3, 1e-15);
    EXPECT_NEAR(hj.points.back()[0], 0.5, 1e-15);
    EXPECT_NEAR(hj.points.back()[1], 7, 1e-15);
}

TEST(HsBoundary, ContinuityAndClosure) {
    for (double p16 : {0.0, 0.01, 0.0625, 0.1, 0.125, 0.2, 0.3, 0.5}) {
        const auto segs = hs_boundary(p16, 30);
        for (std::size_t k = 0; k < segs.size(); ++k) {
            const auto& a = segs[k].points.back();
            const auto& b = segs[(k + 1) % segs.size()].points.front();
            EXPECT_NEAR(a[0], b[0], 1e-9) << p16 << " " << segs[k].label;
            EXPECT_NEAR(a[1], b[1], 1e-9) << p16 << " " << segs[k].label;
        }
    }
}

TEST(HsBoundary, EveryPointSaturates) {
    for (double p16 : {0.0, 0.03, 0.0625, 0.1, 0.125, 0.3, 0.45}) {
        for (const auto& s : hs_boundary(p16, 60))
            for (const auto& p : s.points) {
                const double l = lmin_at(p16, p[0], p[1]);
                if (s.physical_face) {
                    EXPECT_GE(l, 1 - 1e-8);
                    EXPECT_NEAR(hs_point_state(p16, p[0], p[1]).p[0], 0, 1e-12);
                } else {
                    EXPECT_NEAR(l, 1, 1e-8) << s.label << " p16=" << p16 << " v=" << p[0];
                }
            }
    }
}

TEST(HsBoundary, InsideIsSeparableOutsideIsNot) {
    // step 2e-3 off each criterion boundary along alpha: larger alpha means less p2 + p15
    for (double p16 : {0.0625, 0.3}) {
        for (const auto& s : hs_boundary(p16, 15)) {
            if (s.physical_face) continue;
            for (std::size_t i = 1; i + 1 < s.points.size(); ++i) {
                const auto& p = s.points[i];
                const double up = lmin_at(p16, p[0], p[1] + 2e-3), dn = lmin_at(p16, p[0], p[1] - 2e-3);
                EXPECT_TRUE((up < 1) != (dn < 1)) << s.label << " " << p[0];
            }
        }
    }
}

TEST(HsBoundary, ConvexityProbe) {
    std::mt19937_64 rng(61);
    for (double p16 : {0.0, 0.0625, 0.3}) {
        std::vector<GhzProbabilities> pts;
        for (const auto& s : hs_boundary(p16, 25))
            for (const auto& p : s.points) pts.push_back(hs_point_state(p16, p[0], p[1]));
        std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
        for (int t = 0; t < 300; ++t) {
            const auto& a = pts[pick(rng)];
            const auto& b = pts[pick(rng)];
            GhzProbabilities m;
            for (int j = 0; j < 16; ++j) m.p[j] = 0.5 * (a.p[j] + b.p[j]);
            EXPECT_EQ(criteria(m).verdict, Verdict::Separable);
        }
    }
}

TEST(HsBoundary, RejectsBadInput) {
    EXPECT_THROW(hs_boundary(-0.1, 10), ParameterError);
    EXPECT_THROW(hs_boundary(0.6, 10), ParameterError);
    EXPECT_THROW(hs_boundary(0.3, 1), ParameterError);
}

TEST(CurveParametrization, Examples) {
    auto [v, a] = hs_curve_parametrization(0.3, CurveVariant::LM, 0);
    EXPECT_NEAR(v, 1, 1e-15);
    EXPECT_NEAR(a, 6, 1e-15);
    std::tie(v, a) = hs_curve_parametrization(0.3, CurveVariant::LM, 0.5);
    EXPECT_NEAR(v, 2.0 / 3, 1e-15);
    EXPECT_NEAR(a, 8, 1e-15);
    std::tie(v, a) = hs_curve_parametrization(0.3, CurveVariant::KN, 0.5);
    EXPECT_NEAR(v, 1.0 / 3, 1e-15);
    EXPECT_NEAR(a, 6, 1e-15);
    EXPECT_THROW(hs_curve_parametrization(0.3, CurveVariant::LM, 0.6), ParameterError);
}

TEST(CurveParametrization, ConsistentWithImplicitCurves) {
    for (int i = 0; i <= 50; ++i) {
        const double s = 0.5 * i / 50;
        auto [v, a] = hs_curve_parametrization(0.3, CurveVariant::LM, s);
        EXPECT_NEAR(v, hs::lm_v(a), 1e-10);
        std::tie(v, a) = hs_curve_parametrization(0.3, CurveVariant::KN, s);
        EXPECT_NEAR(v, hs::kn_v(a), 1e-10);
    }
    for (double p16 : {0.02, 0.0625, 0.1}) {
        const double u = 1 - 2 * p16;
        for (auto var : {CurveVariant::BelowDiagST, CurveVariant::BelowDiagVU}) {
            const auto [s0, s1] = below_diag_range(u, var);
            for (int i = 0; i <= 40; ++i) {
                const double s = s0 + (s1 - s0) * i / 40;
                const auto [v, a] = hs_curve_parametrization(p16, var, s);
                const double implicit = var == CurveVariant::BelowDiagST ? hs::st_alpha(u, v) : hs::vu_alpha(u, v);
                EXPECT_NEAR(a, implicit, 1e-10) << p16 << " s=" << s;
            }
        }
    }
}

TEST(SymSurface, Examples) {
    EXPECT_NEAR(surface_low(1, 1), 1, 1e-15);
    EXPECT_NEAR(std::sqrt(0.5 * (1 + 1)), 1, 1e-15);
    EXPECT_NEAR(std::sqrt(0.5 * (1 - 1)), 0, 1e-15);
    const auto segs = sym_surface(1.0 / 16, 11);
    int parabolas = 0, triangles = 0;
    for (const auto& s : segs) {
        parabolas += s.label == "parabola";
        triangles += s.label == "planeTriangle";
    }
    EXPECT_EQ(parabolas, 4);
    EXPECT_EQ(triangles, 2);
}

TEST(SymSurface, PointsSaturateAtSeveralOmegas) {
    for (double Omega : {1.0 / 16, 0.04, 0.01}) {
        for (const auto& s : sym_surface(Omega, 15))
            for (const auto& p : s.points) {
                const auto g = symmetric_point_state(Omega, p[0], p[1], p[2]);
                EXPECT_NEAR(l_min(g), 1, 1e-8) << s.label << " " << p[0] << " " << p[1] << " " << p[2];
                EXPECT_EQ(criteria(g).verdict, Verdict::Separable);
            }
    }
}

TEST(SymSurface, MirrorSymmetry) {
    const auto segs = sym_surface(1.0 / 16, 9);
    std::vector<std::array<double, 3>> plus, minus;
    for (const auto& s : segs) {
        if (s.label == "curvedSurfacePlus") plus.insert(plus.end(), s.points.begin(), s.points.end());
        if (s.label == "curvedSurfaceMinus") minus.insert(minus.end(), s.points.begin(), s.points.end());
    }
    ASSERT_EQ(plus.size(), minus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) EXPECT_NEAR(plus[i][2], -minus[i][2], 1e-15);
}
