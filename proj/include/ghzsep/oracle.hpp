#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "dense.hpp"
#include "matching.hpp"
#include "optimize.hpp"
#include "states.hpp"
#include "witness.hpp"

// Brute-force cross-checks for the closed forms. Nothing in here is used by the
// classification path.
namespace ghzsep::oracle {

// Max of the phase polynomial by grid search plus coordinate ascent. Sector witnesses
// use the two-angle reduction, anything else the full four-angle grid.
inline double numeric_g_max(const WitnessParams& w, int n = 48) {
    if (n < 16) throw ParameterError("grid must have at least 16 points per angle");
    const double h = 2 * pi / n;
    double best = -INFINITY;
    if (w.symmetric_sector()) {
        const auto A = GPhaseCoefficients::from(w);
        std::vector<double> vals(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) vals[static_cast<std::size_t>(i) * n + j] = A.g1(i * h, j * h);
        for (auto idx : opt::top_k(vals, 8)) {
            std::array<double, 2> x{h * double(idx / n), h * double(idx % n)};
            best = std::max(best, opt::coordinate_ascent(
                                      [&](const std::array<double, 2>& y) { return A.g1(y[0], y[1]); }, x,
                                      std::array<opt::Box, 2>{}, {h, 1e-12, 1000}));
        }
        return best;
    }
    const std::size_t N = static_cast<std::size_t>(n);
    std::vector<double> vals(N * N * N * N);
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = g_phase(w, {h * double(i / (N * N * N)), h * double((i / (N * N)) % N),
                              h * double((i / N) % N), h * double(i % N)});
    for (auto idx : opt::top_k(vals, 8)) {
        std::array<double, 4> x{h * double(idx / (N * N * N)), h * double((idx / (N * N)) % N),
                                h * double((idx / N) % N), h * double(idx % N)};
        best = std::max(best, opt::coordinate_ascent([&](const std::array<double, 4>& y) { return g_phase(w, y); },
                                                     x, std::array<opt::Box, 4>{}, {h, 1e-12, 1000}));
    }
    return best;
}

// Multistart coordinate ascent of the product-state mean over all 8 Bloch angles.
inline double numeric_lambda(const WitnessParams& w, int starts = 48, int iters = 300, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0, 1);
    std::array<opt::Box, 8> box{};
    for (int k = 0; k < 4; ++k) box[k] = {0, pi};
    auto f = [&](const std::array<double, 8>& x) {
        ProductState s;
        for (int k = 0; k < 4; ++k) {
            s.theta[k] = x[k];
            s.phi[k] = x[4 + k];
        }
        return f_eval(s, w);
    };
    double best = -INFINITY;
    for (int s = 0; s < starts; ++s) {
        std::array<double, 8> x;
        for (int k = 0; k < 4; ++k) x[k] = pi * U(rng);
        for (int k = 4; k < 8; ++k) x[k] = 2 * pi * U(rng);
        best = std::max(best, opt::coordinate_ascent(f, x, box, {0.5, 1e-10, iters}));
    }
    return best;
}

// max of (M8 R8 + M9 R'9 + M15 R15) / g_tilde over the six faces of the unit cube in
// (M8, M9, M15); the ratio is scale invariant so this covers every direction.
inline double numeric_r_tilde(double R8, double Rp9, double R15, int n = 41) {
    if (n < 3) throw ParameterError("grid must have at least 3 points");
    const std::array<double, 3> R{R8, Rp9, R15};
    const double h = 2.0 / (n - 1);
    double best = 0;
    for (int ax = 0; ax < 3; ++ax)
        for (double sg : {1.0, -1.0}) {
            const int o0 = ax == 0 ? 1 : 0, o1 = ax == 2 ? 1 : 2;
            auto F = [&](double a, double b) {
                std::array<double, 3> m{};
                m[ax] = sg;
                m[o0] = a;
                m[o1] = b;
                const double g = g_tilde(m[0], m[1], m[2]);
                return g > 0 ? (m[0] * R[0] + m[1] * R[1] + m[2] * R[2]) / g : 0.0;
            };
            auto grid = [&](int i) { return -1 + h * i; };
            // row maximum: grid scan then golden refinement around the best column
            auto inner = [&](double a) {
                int k = 0;
                double fk = -INFINITY;
                for (int j = 0; j < n; ++j)
                    if (const double v = F(a, grid(j)); v > fk) {
                        fk = v;
                        k = j;
                    }
                const auto [t, ft] = opt::golden_max([&](double b) { return F(a, b); },
                                                     std::max(-1.0, grid(k) - h), std::min(1.0, grid(k) + h), 1e-11);
                return std::max(fk, ft);
            };
            int ib = 0;
            double fb = -INFINITY;
            for (int i = 0; i < n; ++i)
                if (const double v = inner(grid(i)); v > fb) {
                    fb = v;
                    ib = i;
                }
            const auto [t, ft] = opt::golden_max(inner, std::max(-1.0, grid(ib) - h), std::min(1.0, grid(ib) + h), 1e-10);
            best = std::max({best, fb, ft});
        }
    return best;
}

// Eigenvalues (ascending) of the partial transpose over the qubits in mask
// (bit 3 = qubit 1); masks m and 15 - m describe the same cut.
inline Eigen::Matrix<double, 16, 1> partial_transpose_spectrum(const GhzProbabilities& g, unsigned mask) {
    if (mask < 1 || mask > 14) throw ParameterError("bipartition mask must be in 1..14");
    return dense::eigenvalues(dense::partial_transpose(dense::density_matrix(g), mask));
}

// Smallest partial-transpose eigenvalue over the 7 distinct cuts.
inline double ppt_min_eigenvalue(const GhzProbabilities& g) {
    double m = INFINITY;
    for (unsigned mask = 1; mask <= 7; ++mask) m = std::min(m, partial_transpose_spectrum(g, mask).minCoeff());
    return m;
}

// Flat Dirichlet draw over the 16 GHZ weights.
template <class Rng>
GhzProbabilities random_ghz_diagonal(Rng& rng) {
    std::exponential_distribution<double> E(1.0);
    GhzProbabilities g;
    double s = 0;
    for (auto& p : g.p) s += p = E(rng);
    for (auto& p : g.p) p /= s;
    return g;
}

// Flat Dirichlet draw over the six orbit masses of the symmetric family.
template <class Rng>
GhzProbabilities random_symmetric(Rng& rng) {
    std::exponential_distribution<double> E(1.0);
    std::array<double, 6> m;
    double s = 0;
    for (auto& x : m) s += x = E(rng);
    SymmetricParams sp;
    sp.p1 = m[0] / s;
    sp.p2 = m[1] / s / 4;
    sp.p4 = m[2] / s / 3;
    sp.p13 = m[3] / s / 3;
    sp.p15 = m[4] / s / 4;
    sp.p16 = m[5] / s;
    return make_symmetric(sp);
}

// Sector witness with zero diagonal part and M8, M9, M15 uniform in [-1, 1].
template <class Rng>
WitnessParams random_sector_witness(Rng& rng) {
    std::uniform_real_distribution<double> U(-1, 1);
    const double a = U(rng), b = U(rng), c = U(rng);
    return WitnessParams::sector({}, a, b, c);
}

// Sector witness whose scaled diagonal part is a random convex combination of the
// polyhedron vertices (inside) or 1.5 times a random vertex (outside).
template <class Rng>
WitnessParams random_polyhedron_witness(Rng& rng, bool outside = false) {
    std::uniform_real_distribution<double> U(-1, 1);
    std::exponential_distribution<double> E(1.0);
    std::array<double, 7> m{};
    if (outside) {
        m = polyhedron_vertex(static_cast<int>(rng() % 8));
        for (auto& x : m) x *= 1.5;
    } else {
        std::array<double, 8> lam;
        double s = 0;
        for (auto& x : lam) s += x = E(rng);
        for (int k = 0; k < 8; ++k)
            for (int i = 0; i < 7; ++i) m[i] += lam[k] / s * polyhedron_vertex(k)[i];
    }
    const double a = U(rng), b = U(rng), c = U(rng);
    const double gt = g_tilde(a, b, c);
    for (auto& x : m) x *= gt;
    return WitnessParams::sector(m, a, b, c);
}

struct SearchResult {
    double l_best = std::numeric_limits<double>::infinity();
    WitnessParams w_best;
    std::vector<std::pair<int, double>> record;  // (round, l_best) at each improvement
};

// Randomized witness search: each round draws a sector witness, computes its Lambda and
// records the smallest L = Lambda / sum M_i R_i. See README for the proposal scheme.
inline SearchResult numeric_matched_witness(const GhzProbabilities& g, int rounds, std::uint64_t seed,
                                            const LambdaOptions& lo = {}) {
    if (rounds < 1) throw ParameterError("rounds must be at least 1");
    const auto c = probabilities_to_correlations(g);
    const std::array<double, 3> Ra{c.R[7], c.Rp9(), c.R[14]};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N01(0, 1);
    std::uniform_real_distribution<double> U(-1, 1);

    std::array<std::array<double, 7>, 8> P;
    for (int k = 0; k < 8; ++k) P[k] = polyhedron_vertex(k);

    SearchResult out;
    auto consider = [&](int r, const WitnessParams& M, double L) {
        if (L < out.l_best) {
            out.l_best = L;
            out.w_best = M;
            out.record.emplace_back(r, L);
        }
    };
    // anti-diagonal triple signed so that its overlap with the state is nonnegative
    auto orient = [&](std::array<double, 3>& a) {
        if (a[0] * Ra[0] + a[1] * Ra[1] + a[2] * Ra[2] < 0)
            for (auto& x : a) x = -x;
    };
    // barycentric proposal: softmax weights over the polyhedron vertices
    auto build = [&](const std::array<double, 11>& z, double& gt) {
        std::array<double, 8> lam;
        const double mx = *std::max_element(z.begin(), z.begin() + 8);
        double sum = 0;
        for (int k = 0; k < 8; ++k) sum += lam[k] = std::exp(z[k] - mx);
        std::array<double, 3> a{z[8], z[9], z[10]};
        orient(a);
        gt = g_tilde(a[0], a[1], a[2]);
        std::array<double, 7> diag{};
        for (int k = 0; k < 8; ++k)
            for (int i = 0; i < 7; ++i) diag[i] += gt * lam[k] / sum * P[k][i];
        return WitnessParams::sector(diag, a[0], a[1], a[2]);
    };

    std::array<double, 11> inc{};
    bool have_inc = false;
    double inc_L = INFINITY;
    for (int r = 0; r < rounds; ++r) {
        if (r % 8 == 7) {
            // plain uniform draw of the ten free sector parameters
            std::array<double, 7> diag;
            for (auto& x : diag) x = U(rng);
            std::array<double, 3> a{U(rng), U(rng), U(rng)};
            orient(a);
            const auto M = WitnessParams::sector(diag, a[0], a[1], a[2]);
            const double S = dot(M, c), gt = g_tilde(M);
            if (!(S > 0) || !(gt > 0) || gt / S >= out.l_best) continue;  // Lambda >= g_tilde
            consider(r, M, lambda_product_max(M, lo).value / S);
            continue;
        }
        std::array<double, 11> z;
        if (!have_inc || (r < rounds / 10 && r % 2 == 0)) {
            for (int k = 0; k < 8; ++k) z[k] = 3 * N01(rng);
            for (int k = 8; k < 11; ++k) z[k] = U(rng);
        } else {
            std::array<double, 11> d;
            for (auto& x : d) x = N01(rng);
            const int blk = static_cast<int>(rng() % 3);
            if (blk == 0)
                for (int k = 8; k < 11; ++k) d[k] = 0;
            else if (blk == 1)
                for (int k = 0; k < 8; ++k) d[k] = 0;
            double nrm = 0;
            for (double x : d) nrm += x * x;
            nrm = std::sqrt(nrm);
            const double step = std::pow(10.0, -7 + 7.5 * (U(rng) + 1) / 2);
            for (int k = 0; k < 11; ++k) z[k] = inc[k] + (nrm > 0 ? step * d[k] / nrm : 0);
        }
        double gt = 0;
        const auto M = build(z, gt);
        const double S = dot(M, c);
        if (!(gt > 0) || !(S > 0)) continue;
        const double L = gt / S;  // inside the polyhedron Lambda = g_tilde
        consider(r, M, L);
        if (L < inc_L) {
            inc_L = L;
            inc = z;
            have_inc = true;
            double amax = std::max({std::abs(z[8]), std::abs(z[9]), std::abs(z[10])});
            if (amax > 0)
                for (int k = 8; k < 11; ++k) inc[k] /= amax;
        }
    }
    return out;
}

}  // namespace ghzsep::oracle
