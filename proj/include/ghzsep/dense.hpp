#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "states.hpp"

namespace ghzsep::dense {

using cplx = std::complex<double>;
using Mat = Eigen::Matrix<cplx, 16, 16>;
using RMat = Eigen::Matrix<double, 16, 16>;
using Vec = Eigen::Matrix<cplx, 16, 1>;

inline Eigen::Matrix2cd pauli(char c) {
    Eigen::Matrix2cd m;
    switch (c) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m.setIdentity(); break;
    }
    return m;
}

// Kronecker product of single-qubit factors, qubit 1 most significant.
inline Mat pauli_string(const std::string& s) {
    Mat out;
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            cplx v = 1.0;
            for (int q = 0; q < 4; ++q) {
                const int rb = (r >> (3 - q)) & 1, cb = (c >> (3 - q)) & 1;
                v *= pauli(s[q])(rb, cb);
            }
            out(r, c) = v;
        }
    return out;
}

inline Vec ghz_vector(int j) {
    const auto g = ghz_basis_vector(j);
    Vec v = Vec::Zero();
    v(g.b0) = 1.0 / std::sqrt(2.0);
    v(g.b1) = g.sign / std::sqrt(2.0);
    return v;
}

inline RMat density_matrix(const GhzProbabilities& g) {
    Mat m = Mat::Zero();
    for (int j = 1; j <= 16; ++j) {
        const Vec v = ghz_vector(j);
        m += g.at(j) * v * v.adjoint();
    }
    return m.real();
}

inline RMat density_matrix(const XMatrixElements& x) {
    RMat m = RMat::Zero();
    for (int i = 0; i < 8; ++i) {
        m(i, i) = m(15 - i, 15 - i) = x.d[i];
        m(i, 15 - i) = m(15 - i, i) = x.a[i];
    }
    return m;
}

// Reads the X-shaped part of a dense matrix.
inline XMatrixElements elements_of(const Mat& m) {
    XMatrixElements x;
    for (int i = 0; i < 8; ++i) {
        x.d[i] = 0.5 * (m(i, i).real() + m(15 - i, 15 - i).real());
        x.a[i] = 0.5 * (m(i, 15 - i).real() + m(15 - i, i).real());
    }
    return x;
}

// Largest entry outside the X pattern.
inline double off_x_norm(const Mat& m) {
    double worst = 0;
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
            if (c != r && c != 15 - r) worst = std::max(worst, std::abs(m(r, c)));
    return worst;
}

inline Eigen::Vector2cd qubit(double theta, double phi) {
    Eigen::Vector2cd v;
    v << std::cos(theta / 2), std::sin(theta / 2) * std::exp(cplx(0, phi));
    return v;
}

inline Vec product_vector(const std::array<double, 4>& theta, const std::array<double, 4>& phi) {
    std::array<Eigen::Vector2cd, 4> q;
    for (int k = 0; k < 4; ++k) q[k] = qubit(theta[k], phi[k]);
    Vec v;
    for (int b = 0; b < 16; ++b) {
        cplx a = 1.0;
        for (int k = 0; k < 4; ++k) a *= q[k]((b >> (3 - k)) & 1);
        v(b) = a;
    }
    return v;
}

inline Vec basis_vector(int b) {
    Vec v = Vec::Zero();
    v(b) = 1.0;
    return v;
}

// Partial transpose on the qubits flagged in mask (bit 3 = qubit 1).
inline RMat partial_transpose(const RMat& m, unsigned mask) {
    RMat out;
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            const int diff = (r ^ c) & static_cast<int>(mask);
            out(r ^ diff, c ^ diff) = m(r, c);
        }
    return out;
}

inline Eigen::Matrix<double, 16, 1> eigenvalues(const RMat& m) {
    Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline Eigen::Matrix<double, 16, 1> eigenvalues(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace ghzsep::dense
