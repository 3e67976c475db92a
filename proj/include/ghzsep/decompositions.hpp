#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dense.hpp"
#include "matching.hpp"
#include "states.hpp"
#include "witness.hpp"

namespace ghzsep {

// One pure product term: either Bloch angles or a computational basis label.
struct Term {
    double w = 0;
    bool basis = false;
    int index = 0;  // basis label, qubit 1 most significant
    ProductState ps;
};

struct SeparableDecomposition {
    std::vector<Term> terms;
    double target_residual = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline double wrap_phase(double a) {
    a = std::fmod(a, 2 * pi);
    return a < 0 ? a + 2 * pi : a;
}

inline Term equator_term(double w, const std::array<double, 4>& phi) {
    Term t;
    t.w = w;
    t.ps.theta = {pi / 2, pi / 2, pi / 2, pi / 2};
    for (int k = 0; k < 4; ++k) t.ps.phi[k] = wrap_phase(phi[k]);
    return t;
}

inline Term basis_term(double w, int b) {
    Term t;
    t.w = w;
    t.basis = true;
    t.index = b;
    return t;
}

inline void append(SeparableDecomposition& out, const SeparableDecomposition& d, double scale) {
    if (scale == 0) return;
    for (auto t : d.terms) {
        t.w *= scale;
        out.terms.push_back(t);
    }
}

inline void check_sign(int sign) {
    if (sign != 1 && sign != -1) throw ParameterError("sign must be +1 or -1");
}

}  // namespace detail

inline dense::Mat assemble(const SeparableDecomposition& d) {
    dense::Mat m = dense::Mat::Zero();
    for (const auto& t : d.terms) {
        const dense::Vec v = t.basis ? dense::basis_vector(t.index)
                                     : dense::product_vector(t.ps.theta, t.ps.phi);
        m += t.w * v * v.adjoint();
    }
    return m;
}

// GHZ weights of the assembled matrix (X-shaped part only).
inline GhzProbabilities state_of(const SeparableDecomposition& d) {
    return elements_to_probabilities(dense::elements_of(assemble(d)));
}

// Eight phase shifts of qubits 1-3 and the conjugate copy; qubit 4 cancels the phase sum.
inline SeparableDecomposition rho3(double phi, int sign) {
    detail::check_sign(sign);
    SeparableDecomposition d;
    for (int conj = 0; conj < 2; ++conj)
        for (int k = 0; k < 8; ++k) {
            std::array<double, 4> ph;
            double sum = 0;
            for (int j = 0; j < 3; ++j) {
                ph[j] = phi + (((k >> (2 - j)) & 1) ? pi : 0.0);
                sum += ph[j];
            }
            ph[3] = -sum + (sign < 0 ? pi : 0.0);
            if (conj)
                for (auto& a : ph) a = -a;
            d.terms.push_back(detail::equator_term(1.0 / 16.0, ph));
        }
    return d;
}

inline SeparableDecomposition rho4(double q1, double q2, int sign) {
    detail::check_sign(sign);
    if (q1 < -tau_p || q2 < -tau_p || q1 + q2 > 1 + tau_p)
        throw ParameterError("rho4 weights need q1, q2 >= 0 and q1 + q2 <= 1");
    q1 = std::max(q1, 0.0);
    q2 = std::max(q2, 0.0);
    SeparableDecomposition d;
    detail::append(d, rho3(0, sign), std::max(0.0, 1 - q1 - q2));
    detail::append(d, rho3(pi / 4, sign), q1);
    detail::append(d, rho3(pi / 2, sign), q2);
    return d;
}

enum class LineBranch { Plus, Minus };

// Criterion-I line states with weight on |0000> and |1111> fixed by p16.
inline SeparableDecomposition line_state(double p16, double q1, double q2, LineBranch br) {
    if (p16 < 0 || p16 > 0.5) throw ParameterError("p16 must lie in [0, 1/2]");
    SeparableDecomposition d;
    if (br == LineBranch::Plus) {
        detail::append(d, rho4(q1, q2, +1), 1 - 2 * p16);
        if (p16 > 0) {
            d.terms.push_back(detail::basis_term(p16, 0));
            d.terms.push_back(detail::basis_term(p16, 15));
        }
        return d;
    }
    const auto r4 = rho4(q1, q2, -1);
    const double pi16 = state_of(r4).p[15];
    const double w = (p16 - pi16) / (1 - 2 * pi16);
    if (w < -tau_p || w > 0.5 + tau_p)
        throw ParameterError("minus-branch line state needs p16 >= " + std::to_string(pi16));
    const double wc = std::clamp(w, 0.0, 0.5);
    detail::append(d, r4, 1 - 2 * wc);
    if (wc > 0) {
        d.terms.push_back(detail::basis_term(wc, 0));
        d.terms.push_back(detail::basis_term(wc, 15));
    }
    return d;
}

// Equal phases on all qubits, parity class of the pi shifts set by sign. The
// conjugate copy removes the odd-Y strings so the result is GHZ-diagonal.
inline SeparableDecomposition rho_pm(double phi, int sign) {
    detail::check_sign(sign);
    SeparableDecomposition d;
    const int parity = sign > 0 ? 0 : 1;
    for (int conj = 0; conj < 2; ++conj)
        for (int m = 0; m < 16; ++m) {
            if (__builtin_popcount(static_cast<unsigned>(m)) % 2 != parity) continue;
            std::array<double, 4> ph;
            for (int j = 0; j < 4; ++j) ph[j] = phi + (((m >> (3 - j)) & 1) ? pi : 0.0);
            if (conj)
                for (auto& a : ph) a = -a;
            d.terms.push_back(detail::equator_term(1.0 / 16.0, ph));
        }
    return d;
}

// (rho_sign(phi) + s rho_{-sign}(pi/2)) / (1 + s) with s = sin^2 phi.
inline SeparableDecomposition rho5(double sin2phi, int sign) {
    const double phi = std::asin(std::sqrt(std::clamp(sin2phi, 0.0, 1.0)));
    SeparableDecomposition d;
    detail::append(d, rho_pm(phi, sign), 1 / (1 + sin2phi));
    detail::append(d, rho_pm(pi / 2, -sign), sin2phi / (1 + sin2phi));
    return d;
}

enum class CurveVariant { LM, KN, BelowDiagST, BelowDiagVU };

// For the below-diagonal variants at an angle where the mixed state has p16 = 0, the
// weight is not fixed by p16; pass it as w5 (this traces the lines through J at p16 = 0).
inline SeparableDecomposition curve_state(double p16, CurveVariant v, double sin2phi,
                                          double w5 = std::numeric_limits<double>::quiet_NaN()) {
    if (sin2phi < 0 || sin2phi > 0.5) throw ParameterError("sin^2 phi must lie in [0, 1/2]");
    if (p16 < 0 || p16 > 0.5) throw ParameterError("p16 must lie in [0, 1/2]");
    const int sign = (v == CurveVariant::LM || v == CurveVariant::BelowDiagST) ? -1 : +1;
    const auto r5 = rho5(sin2phi, sign);
    const double pi16 = state_of(r5).p[15];
    SeparableDecomposition d;
    if (v == CurveVariant::LM || v == CurveVariant::KN) {
        // R7 >= 0: weight R7 split over |0000>, |1111>
        const double R7 = (p16 - pi16) / (0.5 - pi16);
        if (R7 < -tau_p || R7 > 1 + tau_p)
            throw ParameterError("curve state weight out of range (R7 = " + std::to_string(R7) + ")");
        const double r = std::clamp(R7, 0.0, 1.0);
        detail::append(d, r5, 1 - r);
        if (r > 0) {
            d.terms.push_back(detail::basis_term(r / 2, 0));
            d.terms.push_back(detail::basis_term(r / 2, 15));
        }
        return d;
    }
    // R7 < 0: weight -7 R7 spread over the 14 basis states other than 0000, 1111
    double w;
    if (pi16 > 1e-14) {
        w = p16 / pi16;
    } else {
        if (p16 > tau_p || std::isnan(w5))
            throw ParameterError("curve state needs p16 = 0 and an explicit weight at this angle");
        w = w5;
    }
    if (w < -tau_p || w > 1 + tau_p) throw ParameterError("curve state weight out of range (w = " + std::to_string(w) + ")");
    const double wc = std::clamp(w, 0.0, 1.0);
    detail::append(d, r5, wc);
    if (wc < 1)
        for (int b = 1; b < 15; ++b) d.terms.push_back(detail::basis_term((1 - wc) / 14, b));
    return d;
}

// rho_+(phi) + mu rho_-(pi/2) or rho_+(phi) + mu rho_-(0); mirrors swap rho_+ and rho_-.
enum class SymVariant { HalfPi, Zero, MirrorHalfPi, MirrorZero };

// Mixtures of rho_+ and rho_- that trace the curved boundary surfaces.
inline SeparableDecomposition sym_boundary_state(double mu, double phi, SymVariant v) {
    if (!(mu >= 0)) throw ParameterError("mu must be nonnegative");
    const double c2 = std::cos(2 * phi);
    const bool wants_nonneg = v == SymVariant::HalfPi || v == SymVariant::MirrorHalfPi;
    if (wants_nonneg ? c2 < -1e-12 : c2 > 1e-12)
        throw ParameterError("cos(2 phi) has the wrong sign for this variant");
    const int first = (v == SymVariant::HalfPi || v == SymVariant::Zero) ? +1 : -1;
    const double second_phi = (v == SymVariant::HalfPi || v == SymVariant::MirrorHalfPi) ? pi / 2 : 0.0;
    const double w1 = std::isinf(mu) ? 0.0 : 1 / (1 + mu);
    SeparableDecomposition d;
    detail::append(d, rho_pm(phi, first), w1);
    detail::append(d, rho_pm(second_phi, -first), 1 - w1);
    return d;
}

inline double surface_low(double X, double Y) {
    return 0.5 * (1 - Y + std::sqrt(std::max(0.0, (1 + Y) * (1 + X))));
}

inline double surface_high(double X, double Y) {
    return 0.5 * (1 + Y + std::sqrt(std::max(0.0, (1 - Y) * (1 - X))));
}

// Lift an Omega = 1/16 decomposition to smaller Omega.
inline SeparableDecomposition lift_omega(const SeparableDecomposition& base, double Omega) {
    if (!(Omega > 0) || Omega > 1.0 / 16 + tau_p) throw ParameterError("Omega must lie in (0, 1/16]");
    const double s = std::min(16 * Omega, 1.0);
    SeparableDecomposition d;
    detail::append(d, base, s);
    if (s < 1) {
        d.terms.push_back(detail::basis_term((1 - s) / 2, 0));
        d.terms.push_back(detail::basis_term((1 - s) / 2, 15));
    }
    return d;
}

// Symmetric state with rho_{1,16} = X Omega, rho_{4,13} = Y Omega, rho_{2,15} = Z Omega.
inline GhzProbabilities symmetric_point_state(double Omega, double X, double Y, double Z) {
    XMatrixElements x;
    x.d.fill(Omega);
    x.d[0] = 0.5 - 7 * Omega;
    x.a[0] = X * Omega;
    for (int i : {2, 3, 5, 8}) x.a[i - 1] = Z * Omega;
    for (int i : {4, 6, 7}) x.a[i - 1] = Y * Omega;
    return validated(elements_to_probabilities(x), 1e-10);
}

// Decomposition of a point on the symmetric-family boundary (curved surfaces, planes X = +-1,
// parabola-enclosed regions of Y = +-1).
inline SeparableDecomposition symmetric_point_decomposition(double Omega, double X, double Y, double Z,
                                                            double tol = 1e-9) {
    auto clampu = [](double v) { return std::clamp(v, -1.0, 1.0); };
    X = clampu(X);
    Y = clampu(Y);
    SeparableDecomposition base;
    if (std::abs(X - 1) <= tol && std::abs(Z) <= 0.5 * (1 + Y) + tol) {
        const double q1 = (1 - Y) / 2;
        base = rho4(q1, std::max(0.0, (1 - q1 - Z) / 2), +1);
    } else if (std::abs(X + 1) <= tol && std::abs(Z) <= 0.5 * (1 - Y) + tol) {
        const double q1 = (1 + Y) / 2;
        base = rho4(q1, std::max(0.0, (1 - q1 + Z) / 2), -1);
    } else if (std::abs(std::abs(Y) - 1) <= tol && std::abs(Z) < std::sqrt(0.5 * (1 + (Y > 0 ? X : -X))) - tol) {
        // interior of a parabola: two-point mix of its upper and lower edge
        const double sgn = Y > 0 ? 1 : -1;
        const double Zp = std::sqrt(0.5 * (1 + sgn * X));
        const double t = 0.5 * (1 + Z / Zp);
        const double phi = 0.5 * std::acos(std::clamp(Zp, -1.0, 1.0));
        const double phi2 = 0.5 * std::acos(std::clamp(-Zp, -1.0, 1.0));
        const SymVariant hi = sgn > 0 ? SymVariant::HalfPi : SymVariant::MirrorZero;
        const SymVariant lo = sgn > 0 ? SymVariant::Zero : SymVariant::MirrorHalfPi;
        detail::append(base, sym_boundary_state(0, sgn > 0 ? phi : phi2, hi), sgn > 0 ? t : 1 - t);
        detail::append(base, sym_boundary_state(0, sgn > 0 ? phi2 : phi, lo), sgn > 0 ? 1 - t : t);
    } else if (X <= Y) {
        if (std::abs(std::abs(Z) - surface_low(X, Y)) > tol)
            throw ParameterError("point is not on a separable boundary surface");
        const double mu = Y <= -1 ? INFINITY : (1 - Y) / (1 + Y);
        const double c = Y <= -1 ? 0.0 : std::sqrt(std::clamp((1 + X) / (1 + Y), 0.0, 1.0));
        base = Z >= 0 ? sym_boundary_state(mu, 0.5 * std::acos(c), SymVariant::HalfPi)
                      : sym_boundary_state(mu, 0.5 * std::acos(-c), SymVariant::Zero);
    } else {
        if (std::abs(std::abs(Z) - surface_high(X, Y)) > tol)
            throw ParameterError("point is not on a separable boundary surface");
        // full negation of a point on the other surface
        const double Xn = -X, Yn = -Y;
        const double mu = Yn <= -1 ? INFINITY : (1 - Yn) / (1 + Yn);
        const double c = Yn <= -1 ? 0.0 : std::sqrt(std::clamp((1 + Xn) / (1 + Yn), 0.0, 1.0));
        base = Z <= 0 ? sym_boundary_state(mu, 0.5 * std::acos(c), SymVariant::MirrorHalfPi)
                      : sym_boundary_state(mu, 0.5 * std::acos(-c), SymVariant::MirrorZero);
    }
    return lift_omega(base, Omega);
}

struct VerifyReport {
    double weight_sum = 0;
    double min_weight = 0;
    double purity_defect = 0;   // worst |<v|v> - 1| over terms
    double off_x = 0;           // largest entry outside the X pattern
    double imag = 0;            // largest imaginary part
    double min_eigenvalue = 0;
    double residual = 0;        // max entrywise distance to the target
    double l_min = 0;
    bool ok(double tol = 1e-9) const {
        return std::abs(weight_sum - 1) <= 1e-12 && min_weight >= 0 && purity_defect <= 1e-12 &&
               off_x <= 1e-10 && imag <= 1e-10 && min_eigenvalue >= -1e-11 && residual <= tol;
    }
};

inline VerifyReport verify(const SeparableDecomposition& d, const GhzProbabilities& target) {
    VerifyReport r;
    r.min_weight = INFINITY;
    for (const auto& t : d.terms) {
        r.weight_sum += t.w;
        r.min_weight = std::min(r.min_weight, t.w);
        if (!t.basis) {
            const auto v = dense::product_vector(t.ps.theta, t.ps.phi);
            r.purity_defect = std::max(r.purity_defect, std::abs(v.squaredNorm() - 1));
        }
    }
    if (d.terms.empty()) r.min_weight = 0;
    const dense::Mat m = assemble(d);
    r.off_x = dense::off_x_norm(m);
    r.imag = m.imag().cwiseAbs().maxCoeff();
    r.min_eigenvalue = dense::eigenvalues(m).minCoeff();
    const dense::RMat t = dense::density_matrix(target);
    r.residual = (m.real() - t).cwiseAbs().maxCoeff();
    r.l_min = l_min(elements_to_probabilities(dense::elements_of(m)));
    return r;
}

}  // namespace ghzsep
