#include <gtest/gtest.h>

#include <random>

#include "ghzsep/dense.hpp"
#include "ghzsep/oracle.hpp"
#include "ghzsep/witness.hpp"

using namespace ghzsep;

namespace {

dense::Mat witness_operator(const WitnessParams& w) {
    dense::Mat m = dense::Mat::Zero();
    for (int i = 0; i < 15; ++i) m += w.M[i] * dense::pauli_string(pauli_names[i]);
    return m;
}

// Phase maximum by a plain four-angle grid, then line searches along the axes and
// the pairwise diagonals from the best grid points (phase sums form ridges).
double brute_g(const WitnessParams& w, int n = 24) {
    const double h = 2 * pi / n;
    const std::size_t N = static_cast<std::size_t>(n);
    std::vector<double> vals(N * N * N * N);
    auto at = [&](std::size_t i) {
        return std::array<double, 4>{h * double(i / (N * N * N)), h * double((i / (N * N)) % N),
                                     h * double((i / N) % N), h * double(i % N)};
    };
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = g_phase(w, at(i));
    std::vector<std::array<double, 4>> dirs;
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> e{};
        e[i] = 1;
        dirs.push_back(e);
        for (int j = i + 1; j < 4; ++j)
            for (double sg : {1.0, -1.0}) {
                std::array<double, 4> d{};
                d[i] = 1;
                d[j] = sg;
                dirs.push_back(d);
            }
    }
    double best = -INFINITY;
    for (auto idx : opt::top_k(vals, 16)) {
        auto x = at(idx);
        double fx = vals[idx], step = h;
        for (int sweep = 0; sweep < 3000 && step > 1e-13; ++sweep) {
            bool moved = false;
            for (const auto& d : dirs) {
                auto line = [&](double t) {
                    auto y = x;
                    for (int k = 0; k < 4; ++k) y[k] += t * d[k];
                    return g_phase(w, y);
                };
                const auto [t, ft] = opt::golden_max(line, -step, step, 1e-15);
                if (ft > fx + 1e-16) {
                    for (int k = 0; k < 4; ++k) x[k] += t * d[k];
                    fx = ft;
                    moved = true;
                }
            }
            if (!moved) step *= 0.5;
        }
        best = std::max(best, fx);
    }
    return best;
}

WitnessParams werner_witness() {
    WitnessParams w = WitnessParams::sector({0, 0, 0, 0, 0, 0, 1}, 1, -1, 1);
    return w;
}

}  // namespace

TEST(FEval, BasisAndPlusStates) {
    WitnessParams w;
    for (int i = 0; i < 15; ++i) w.M[i] = 0.1 * (i + 1);
    ProductState s{};
    double sum7 = 0;
    for (int i = 0; i < 7; ++i) sum7 += w.M[i];
    EXPECT_NEAR(f_eval(s, w), sum7, 1e-15);
    WitnessParams x8;
    x8.M[7] = 1;
    ProductState plus;
    plus.theta.fill(pi / 2);
    EXPECT_NEAR(f_eval(plus, x8), 1, 1e-15);
}

TEST(FEval, MatchesDenseContraction) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1, 1), A(0, 2 * pi);
    for (int t = 0; t < 100; ++t) {
        WitnessParams w;
        for (auto& m : w.M) m = U(rng);
        ProductState s;
        for (int k = 0; k < 4; ++k) {
            s.theta[k] = A(rng) / 2;
            s.phi[k] = A(rng);
        }
        const dense::Vec v = dense::product_vector(s.theta, s.phi);
        const double ref = (v.adjoint() * witness_operator(w) * v)(0, 0).real();
        EXPECT_NEAR(f_eval(s, w), ref, 1e-13);
    }
}

TEST(GTilde, Examples) {
    EXPECT_NEAR(g_tilde(1, -1, 1), 1, 1e-15);
    EXPECT_NEAR(g_tilde(0, 1, 0), 1.5, 1e-15);
    EXPECT_NEAR(g_tilde(3, 1, 3), 3, 1e-15);
    EXPECT_NEAR(brute_g(WitnessParams::sector({}, 0, 1, 0)), 1.5, 1e-9);
    EXPECT_NEAR(brute_g(WitnessParams::sector({}, 3, 1, 3)), 3, 1e-9);
}

TEST(GTilde, MatchesBruteForcePhaseGrid) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        const auto w = oracle::random_sector_witness(rng);
        EXPECT_NEAR(g_tilde(w), brute_g(w), 1e-8);
    }
}

TEST(GPhase, TwoAngleReductionMatchesFourAngles) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 20; ++t) {
        WitnessParams w;
        for (int i = 7; i < 15; ++i) w.M[i] = U(rng);
        EXPECT_NEAR(g_max_general(w), brute_g(w), 1e-8);
    }
}

TEST(DeltaRegion, Examples) {
    EXPECT_TRUE(delta_region_contains(0, 0));
    EXPECT_TRUE(delta_region_contains(-1, -1));
    EXPECT_FALSE(delta_region_contains(4, 0));
}

// Inside the region the phase maximum exceeds max(|M8|, |M9|, |M15|).
TEST(DeltaRegion, AgreesWithNumericPhaseMaximum) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-4, 4);
    int checked = 0;
    for (int t = 0; t < 800; ++t) {
        const double x = U(rng), y = U(rng);
        const auto w = WitnessParams::sector({}, x, 1, y);
        const double gm = oracle::numeric_g_max(w);
        const double gap = gm - std::max({std::abs(x), 1.0, std::abs(y)});
        // outside the region the maximum is attained by a single term, so gap is 0
        if (gap > 1e-7) {
            EXPECT_TRUE(delta_region_contains(x, y)) << x << " " << y;
        } else if (std::abs(gap) < 1e-10) {
            EXPECT_FALSE(delta_region_contains(x, y)) << x << " " << y;
        } else {
            continue;
        }
        ++checked;
    }
    EXPECT_GT(checked, 700);
}

TEST(Polyhedron, Examples) {
    auto r = polyhedron_membership({});
    EXPECT_TRUE(r.inside);
    for (double l : r.lambda) EXPECT_NEAR(l, 0.125, 1e-15);
    r = polyhedron_membership(polyhedron_vertex(0));
    EXPECT_TRUE(r.inside);
    EXPECT_NEAR(r.lambda[0], 1, 1e-15);
    for (int k = 1; k < 8; ++k) EXPECT_NEAR(r.lambda[k], 0, 1e-15);
    r = polyhedron_membership({2, 0, 0, 0, 0, 0, 0});
    EXPECT_FALSE(r.inside);
    EXPECT_NEAR(*std::min_element(r.lambda.begin(), r.lambda.end()), (1 - 2) / 8.0, 1e-15);
}

TEST(Polyhedron, VertexDiagonalHitsMinusSeven) {
    for (int k = 0; k < 8; ++k) {
        const int pair = vertex_pair(k);
        ASSERT_GE(pair, 1);
        const auto P = polyhedron_vertex(k);
        EXPECT_NEAR(diagonal_value(P, pair - 1), -7, 1e-15);
        EXPECT_NEAR(diagonal_value(P, 15 - (pair - 1)), -7, 1e-15);
    }
}

TEST(Lambda, Examples) {
    auto r = lambda_product_max(werner_witness());
    EXPECT_NEAR(r.value, 1, 1e-12);
    r = lambda_product_max(WitnessParams::sector({}, 0, 1, 0));
    EXPECT_EQ(r.method, LambdaMethod::Analytic);
    EXPECT_NEAR(r.value, 1.5, 1e-15);
    auto v = polyhedron_vertex(0);
    for (auto& x : v) x *= 1.5;
    r = lambda_product_max(WitnessParams::sector(v, 1, -1, 1));
    EXPECT_EQ(r.method, LambdaMethod::Numeric);
    EXPECT_GT(r.value, 1 + 1e-3);
}

TEST(Lambda, NumericPathMatchesMultistart) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        const auto w = oracle::random_polyhedron_witness(rng, true);
        EXPECT_NEAR(lambda_product_max(w).value, oracle::numeric_lambda(w), 1e-8);
    }
}

TEST(WitnessValue, Examples) {
    const auto w = werner_witness();
    const auto c1 = probabilities_to_correlations(make_werner(1));
    EXPECT_NEAR(dot(w, c1), 9, 1e-14);
    EXPECT_NEAR(witness_value(c1, w), 1 - 9, 1e-12);
    EXPECT_NEAR(witness_value(probabilities_to_correlations(make_werner(1.0 / 9)), w), 0, 1e-12);
    std::mt19937_64 rng(15);
    const auto mixed = probabilities_to_correlations(make_werner(0));
    for (int t = 0; t < 10; ++t) EXPECT_GE(witness_value(mixed, oracle::random_sector_witness(rng)), 0);
}
