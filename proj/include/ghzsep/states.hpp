#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ghzsep {

// Probability tolerance for validation and renormalization.
inline constexpr double tau_p = 1e-12;

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Pauli strings of the correlation expansion, qubit 1 leftmost.
inline constexpr std::array<const char*, 15> pauli_names = {
    "IIZZ", "IZIZ", "IZZI", "ZIIZ", "ZIZI", "ZZII", "ZZZZ",
    "XXXX", "XXYY", "XYXY", "XYYX", "YXXY", "YXYX", "YYXX", "YYYY"};

// p[0] is p_1. Index j-1 holds the weight of |GHZ_j>.
struct GhzProbabilities {
    std::array<double, 16> p{};
    double at(int j) const { return p.at(j - 1); }
};

// d[i-1] = rho_{i,i} = rho_{17-i,17-i}, a[i-1] = rho_{i,17-i}.
struct XMatrixElements {
    std::array<double, 8> d{};
    std::array<double, 8> a{};
};

// R[0] is R_1.
struct PauliCorrelations {
    std::array<double, 15> R{};
    double at(int i) const { return R.at(i - 1); }
    double Rp9() const { return R[8] + R[9] + R[10] + R[11] + R[12] + R[13]; }
};

struct SymmetricParams {
    double p1 = 0, p2 = 0, p4 = 0, p13 = 0, p15 = 0, p16 = 0;
};

struct HighlySymmetricParams {
    double p1 = 0, p2 = 0, p15 = 0, p16 = 0;

    double u() const { return 1.0 - 2.0 * p16; }
    // v = p15/(p2+p15), alpha = u/(p2+p15)
    double v() const { return p15 / (p2 + p15); }
    double alpha() const { return u() / (p2 + p15); }

    static HighlySymmetricParams from_v_alpha(double p16, double v, double alpha) {
        if (!(alpha > 0)) throw ParameterError("alpha must be positive");
        HighlySymmetricParams h;
        const double u = 1.0 - 2.0 * p16;
        h.p16 = p16;
        h.p15 = v * u / alpha;
        h.p2 = (1.0 - v) * u / alpha;
        h.p1 = 1.0 - p16 - 7.0 * u / alpha;
        return h;
    }
};

struct GhzBasisVector {
    int b0;    // lower computational index, first qubit 0
    int b1;    // 15 - b0
    int sign;  // relative sign of |b1>
};

inline GhzBasisVector ghz_basis_vector(int j) {
    if (j < 1 || j > 16) throw ParameterError("GHZ index out of range: " + std::to_string(j));
    if (j <= 8) return {j - 1, 16 - j, +1};
    return {16 - j, j - 1, -1};
}

namespace detail {

// P|b> = phase |b'> for a Pauli string acting on basis state b.
inline std::pair<int, std::complex<double>> apply_pauli(const char* s, int b) {
    std::complex<double> ph = 1.0;
    int out = b;
    for (int q = 0; q < 4; ++q) {
        const int bit = (b >> (3 - q)) & 1;
        switch (s[q]) {
            case 'X': out ^= 1 << (3 - q); break;
            case 'Y':
                out ^= 1 << (3 - q);
                ph *= bit ? std::complex<double>(0, -1) : std::complex<double>(0, 1);
                break;
            case 'Z': if (bit) ph = -ph; break;
            default: break;
        }
    }
    return {out, ph};
}

inline std::array<std::array<double, 16>, 15> build_sign_matrix() {
    std::array<std::array<double, 16>, 15> S{};
    for (int i = 0; i < 15; ++i) {
        for (int j = 1; j <= 16; ++j) {
            const auto g = ghz_basis_vector(j);
            const double r = 1.0 / std::sqrt(2.0);
            const int idx[2] = {g.b0, g.b1};
            const double amp[2] = {r, g.sign * r};
            std::complex<double> acc = 0.0;
            for (int k = 0; k < 2; ++k) {
                auto [b, ph] = apply_pauli(pauli_names[i], idx[k]);
                for (int l = 0; l < 2; ++l)
                    if (idx[l] == b) acc += amp[l] * ph * amp[k];
            }
            S[i][j - 1] = std::round(acc.real());
        }
    }
    return S;
}

}  // namespace detail

// S[i][j] = <GHZ_{j+1}| P_{i+1} |GHZ_{j+1}>, entries +-1.
inline const std::array<std::array<double, 16>, 15>& sign_matrix() {
    static const auto S = detail::build_sign_matrix();
    return S;
}

inline XMatrixElements probabilities_to_elements(const GhzProbabilities& g) {
    XMatrixElements x;
    for (int i = 0; i < 8; ++i) {
        x.d[i] = 0.5 * (g.p[i] + g.p[15 - i]);
        x.a[i] = 0.5 * (g.p[i] - g.p[15 - i]);
    }
    return x;
}

inline GhzProbabilities elements_to_probabilities(const XMatrixElements& x) {
    GhzProbabilities g;
    for (int i = 0; i < 8; ++i) {
        g.p[i] = x.d[i] + x.a[i];
        g.p[15 - i] = x.d[i] - x.a[i];
    }
    return g;
}

inline PauliCorrelations probabilities_to_correlations(const GhzProbabilities& g) {
    const auto& S = sign_matrix();
    PauliCorrelations c;
    for (int i = 0; i < 15; ++i) {
        double s = 0;
        for (int j = 0; j < 16; ++j) s += S[i][j] * g.p[j];
        c.R[i] = s;
    }
    return c;
}

// Rows of [1; S] are orthogonal with norm 16.
inline GhzProbabilities correlations_to_probabilities(const PauliCorrelations& c) {
    const auto& S = sign_matrix();
    GhzProbabilities g;
    for (int j = 0; j < 16; ++j) {
        double s = 1.0;
        for (int i = 0; i < 15; ++i) s += S[i][j] * c.R[i];
        g.p[j] = s / 16.0;
    }
    return g;
}

inline PauliCorrelations elements_to_correlations(const XMatrixElements& x) {
    return probabilities_to_correlations(elements_to_probabilities(x));
}

inline XMatrixElements correlations_to_elements(const PauliCorrelations& c) {
    return probabilities_to_elements(correlations_to_probabilities(c));
}

// Rejects weights beyond tau_p; clamps and renormalizes within it.
inline GhzProbabilities validated(GhzProbabilities g, double tol = tau_p) {
    double sum = 0;
    for (int j = 0; j < 16; ++j) {
        if (!std::isfinite(g.p[j]))
            throw ParameterError("p_" + std::to_string(j + 1) + " is not finite");
        if (g.p[j] < -tol)
            throw ParameterError("p_" + std::to_string(j + 1) + " = " + std::to_string(g.p[j]) +
                                 " is negative");
        if (g.p[j] < 0) g.p[j] = 0;
        sum += g.p[j];
    }
    if (std::abs(sum - 1.0) > tol)
        throw ParameterError("probabilities sum to " + std::to_string(sum) + ", not 1");
    for (auto& v : g.p) v /= sum;
    return g;
}

inline GhzProbabilities make_werner(double p) {
    GhzProbabilities g;
    g.p.fill((1.0 - p) / 16.0);
    g.p[0] += p;
    return validated(g);
}

inline GhzProbabilities make_highly_symmetric(const HighlySymmetricParams& h) {
    GhzProbabilities g;
    g.p[0] = h.p1;
    g.p[15] = h.p16;
    for (int j = 2; j <= 8; ++j) g.p[j - 1] = h.p2;
    for (int j = 9; j <= 15; ++j) g.p[j - 1] = h.p15;
    return validated(g);
}

// Orbits of the qubit permutation group on GHZ indices.
inline constexpr std::array<int, 4> sym_orbit_p2 = {2, 3, 5, 8};
inline constexpr std::array<int, 4> sym_orbit_p15 = {9, 12, 14, 15};
inline constexpr std::array<int, 3> sym_orbit_p4 = {4, 6, 7};
inline constexpr std::array<int, 3> sym_orbit_p13 = {10, 11, 13};

inline GhzProbabilities make_symmetric(const SymmetricParams& s) {
    GhzProbabilities g;
    g.p[0] = s.p1;
    g.p[15] = s.p16;
    for (int j : sym_orbit_p2) g.p[j - 1] = s.p2;
    for (int j : sym_orbit_p15) g.p[j - 1] = s.p15;
    for (int j : sym_orbit_p4) g.p[j - 1] = s.p4;
    for (int j : sym_orbit_p13) g.p[j - 1] = s.p13;
    return validated(g);
}

inline bool is_symmetric(const PauliCorrelations& c, double tol = 1e-10) {
    for (int i = 1; i < 6; ++i)
        if (std::abs(c.R[i] - c.R[0]) > tol) return false;
    for (int i = 9; i < 14; ++i)
        if (std::abs(c.R[i] - c.R[8]) > tol) return false;
    return true;
}

inline bool is_highly_symmetric(const PauliCorrelations& c, double tol = 1e-10) {
    return is_symmetric(c, tol) && std::abs(c.R[0] - c.R[6]) <= tol &&
           std::abs(c.R[14] + c.R[8]) <= tol;
}

// Omega = min_i rho_{i,i}.
inline double omega(const XMatrixElements& x) {
    double m = x.d[0];
    for (double v : x.d) m = std::min(m, v);
    return m;
}

}  // namespace ghzsep
