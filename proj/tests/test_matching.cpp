#include <gtest/gtest.h>

#include <random>

#include "ghzsep/boundaries.hpp"
#include "ghzsep/matching.hpp"
#include "ghzsep/oracle.hpp"

using namespace ghzsep;

TEST(RTilde, Examples) {
    for (double p : {0.05, 0.3, 1.0}) {
        const auto r = r_tilde(p, -6 * p, p);
        EXPECT_NEAR(r.value, 8 * p, 1e-14);
        EXPECT_EQ(r.which, Case::I);
    }
    auto r = r_tilde(1, 3, 1);
    EXPECT_NEAR(r.value, 3, 1e-14);
    EXPECT_EQ(r.which, Case::II);
    r = r_tilde(0, 3, 1);
    EXPECT_NEAR(r.value, 2.5, 1e-14);
    EXPECT_EQ(r.which, Case::III);
    for (const auto& t : {std::array<double, 3>{0.3, -1.8, 0.3}, {1, 3, 1}, {0, 3, 1}})
        EXPECT_NEAR(r_tilde(t[0], t[1], t[2]).value, oracle::numeric_r_tilde(t[0], t[1], t[2]), 1e-6);
}

TEST(RTilde, ZeroRp9IsSumOfMagnitudes) {
    EXPECT_NEAR(r_tilde(0.3, 0, -0.2).value, 0.5, 1e-15);
    EXPECT_NEAR(r_tilde(-0.1, 0, -0.4).value, 0.5, 1e-15);
    EXPECT_NEAR(oracle::numeric_r_tilde(0.3, 0, -0.2), 0.5, 1e-6);
}

TEST(RTilde, MatchesGridOracle) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(-1, 1);
    double worst = 0;
    for (int t = 0; t < 300; ++t) {
        const double a = U(rng), b = t % 20 == 0 ? 0.0 : 6 * U(rng), c = U(rng);
        worst = std::max(worst, std::abs(r_tilde(a, b, c).value - oracle::numeric_r_tilde(a, b, c)));
    }
    EXPECT_LE(worst, 1e-6);
}

TEST(LMin, Examples) {
    for (double p : {0.05, 1.0 / 9, 0.5})
        EXPECT_NEAR(l_min(make_werner(p)), 1 / (9 * p), 1e-12);
    // flat diagonal, R8 = 1 only
    PauliCorrelations c{};
    c.R[7] = 1;
    EXPECT_NEAR(l_min(correlations_to_probabilities(c)), 1, 1e-14);
    EXPECT_TRUE(std::isinf(l_min(make_werner(0))));
}

TEST(Criteria, WernerThreshold) {
    auto r = criteria(make_werner(1.0 / 9));
    for (const auto& m : r.margins)
        if (m.applicable) {
            EXPECT_LE(m.value, 1e-15);
        }
    EXPECT_NEAR(r.margins[0].value, 0, 1e-15);
    EXPECT_EQ(r.verdict, Verdict::Separable);
    r = criteria(make_werner(0.2));
    EXPECT_GT(r.margins[0].value, 0);
    EXPECT_EQ(r.verdict, Verdict::Entangled);
}

TEST(Criteria, TriangleVertexIsBoundary) {
    const auto g = symmetric_point_state(1.0 / 16, 1, 1, 1);
    const auto r = criteria(g);
    EXPECT_EQ(r.verdict, Verdict::Separable);
    EXPECT_NEAR(r.margins[0].value, 0, 1e-15);
    EXPECT_NEAR(r.margins[1].value, 0, 1e-15);
    EXPECT_NEAR(r.l_min, 1, 1e-14);
}

TEST(Criteria, NonSymmetricVocabulary) {
    std::mt19937_64 rng(43);
    int necessity = 0;
    for (int t = 0; t < 200; ++t) {
        const auto g = oracle::random_ghz_diagonal(rng);
        const auto r = criteria(g);
        EXPECT_FALSE(r.symmetric_family);
        EXPECT_TRUE(r.verdict == Verdict::EntangledByNecessity || r.verdict == Verdict::Undetermined);
        necessity += r.verdict == Verdict::EntangledByNecessity;
    }
    EXPECT_GT(necessity, 0);
}

TEST(Criteria, MarginIIUsesSumOfOrbitAntiDiagonals) {
    // a4 + a6 + a7 = (3 R8 + R'9 + 3 R15) / 16 on symmetric states
    std::mt19937_64 rng(45);
    for (int t = 0; t < 100; ++t) {
        const auto g = oracle::random_symmetric(rng);
        const auto x = probabilities_to_elements(g);
        const auto c = probabilities_to_correlations(g);
        EXPECT_NEAR(x.a[3] + x.a[5] + x.a[6], (3 * c.R[7] + c.Rp9() + 3 * c.R[14]) / 16, 1e-15);
    }
}

// Entangled <=> l_min < 1 <=> the matched witness detects the state.
TEST(Criteria, EquivalenceOnRandomSymmetricStates) {
    std::mt19937_64 rng(47);
    int entangled = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto g = oracle::random_symmetric(rng);
        const auto r = criteria(g);
        const auto c = probabilities_to_correlations(g);
        const double lm = r.l_min;
        if (std::abs(lm - 1) < 1e-9) continue;
        const bool ent = r.verdict == Verdict::Entangled;
        entangled += ent;
        EXPECT_EQ(ent, lm < 1 - 1e-9);
        const auto lam = lambda_product_max(r.matched_witness);
        EXPECT_EQ(lam.method, LambdaMethod::Analytic);
        const double wv = witness_value(c, r.matched_witness, lam.value);
        EXPECT_EQ(ent, wv < 0);
        if (std::isfinite(lm)) {
            EXPECT_NEAR(wv, 1 - 1 / lm, 1e-12);
        }
    }
    EXPECT_GT(entangled, 50);
}

TEST(MatchedWitness, WernerUsesCaseOne) {
    for (double p : {0.05, 1.0 / 9, 0.4}) {
        const auto g = make_werner(p);
        const auto w = matched_witness(g);
        EXPECT_NEAR(g_tilde(w), 1, 1e-14);
        EXPECT_EQ(r_tilde(probabilities_to_correlations(g)).which, Case::I);
        // anti-diagonal part proportional to (1, -1, 1)
        EXPECT_NEAR(w.M[7], w.M[14], 1e-15);
        EXPECT_NEAR(w.M[8], -w.M[7], 1e-15);
        const double val = witness_value(probabilities_to_correlations(g), w, 1.0);
        EXPECT_NEAR(val, 1 - 9 * p, 1e-12);
    }
}

TEST(MatchedWitness, FlatDiagonalR8OnlySaturates) {
    PauliCorrelations c{};
    c.R[7] = 1;
    const auto g = correlations_to_probabilities(c);
    const auto w = matched_witness(g);
    EXPECT_NEAR(witness_value(c, w), 0, 1e-12);
}

TEST(MatchedWitness, DetectsStatesPushedOutsideSurface) {
    std::mt19937_64 rng(49);
    std::uniform_real_distribution<double> U(-1, 1);
    int checked = 0;
    for (int t = 0; t < 100; ++t) {
        double X = U(rng), Y = U(rng);
        if (X > Y) std::swap(X, Y);
        const double Z = surface_low(X, Y) + 0.05;
        const double Omega = 1.0 / 16 / 1.2;
        XMatrixElements x;
        x.d.fill(Omega);
        x.d[0] = 0.5 - 7 * Omega;
        x.a[0] = X * Omega;
        for (int i : {2, 3, 5, 8}) x.a[i - 1] = Z * Omega;
        for (int i : {4, 6, 7}) x.a[i - 1] = Y * Omega;
        const auto g = elements_to_probabilities(x);
        bool valid = true;
        for (double p : g.p) valid &= p >= 0;
        if (!valid) continue;
        const auto c = probabilities_to_correlations(g);
        EXPECT_LT(witness_value(c, matched_witness(g)), 0);
        ++checked;
    }
    EXPECT_GT(checked, 20);
}

TEST(Ppt, Examples) {
    const auto r = ppt_criterion(make_werner(1.0 / 9));
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.margin, 0, 1e-15);
    EXPECT_FALSE(ppt_criterion(make_werner(1)).holds);
}

TEST(Ppt, AgreesWithDensePartialTranspose) {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 500; ++t) {
        const auto g = oracle::random_ghz_diagonal(rng);
        EXPECT_EQ(ppt_criterion(g).holds, oracle::ppt_min_eigenvalue(g) >= -1e-10);
    }
}

TEST(Kay, Examples) {
    EXPECT_TRUE(kay_condition(probabilities_to_correlations(make_werner(0.3))));
    PauliCorrelations c{};
    c.R[7] = 0.1;
    for (int i = 8; i < 14; ++i) c.R[i] = 0.1;
    c.R[14] = 0.1;
    EXPECT_FALSE(kay_condition(c));
    // plane rho_{4,13} = -Omega, inside the parabola
    for (double X : {-0.5, 0.0, 0.5}) {
        const auto g = symmetric_point_state(1.0 / 16, X, -1, 0.3 * std::sqrt(0.5 * (1 - X)));
        EXPECT_FALSE(kay_condition(probabilities_to_correlations(g)));
    }
}
