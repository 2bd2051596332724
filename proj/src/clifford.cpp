#include "finspec/clifford.hpp"

#include <algorithm>
#include <cmath>

namespace finspec {

namespace {

const cplx kI{0.0, 1.0};

Matrix pauli(int k) {
    Matrix s(2, 2);
    switch (k) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -kI, kI, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

Matrix blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    Matrix m(4, 4);
    m << a, b, c, d;
    return m;
}

CliffordData chiral4() {
    CliffordData c;
    c.dimension = 4;
    c.basis = "chiral";
    const Matrix z = Matrix::Zero(2, 2);
    const Matrix one = identity(2);
    for (int k = 1; k <= 3; ++k) c.gammas.push_back(blocks(z, -kI * pauli(k), kI * pauli(k), z));
    c.gammas.push_back(blocks(z, one, one, z));
    c.chirality = c.gammas[0] * c.gammas[1] * c.gammas[2] * c.gammas[3];
    const Matrix is2 = kI * pauli(2);
    c.charge_conjugation = blocks(is2, z, z, -is2);
    return c;
}

}  // namespace

CliffordData clifford(int dimension, const std::string& basis) {
    if (dimension == 4) {
        CliffordData c = chiral4();
        if (basis == "chiral") return c;
        if (basis != "dirac") throw InvalidData("unknown gamma basis '" + basis + "' (expected chiral or dirac)");
        Matrix w = Matrix::Zero(4, 4);
        w.topLeftCorner(2, 2) = identity(2);
        w.topRightCorner(2, 2) = identity(2);
        w.bottomLeftCorner(2, 2) = identity(2);
        w.bottomRightCorner(2, 2) = -identity(2);
        w /= std::sqrt(2.0);
        for (auto& g : c.gammas) g = w * g * w.adjoint();
        c.chirality = w * *c.chirality * w.adjoint();
        c.charge_conjugation = w * c.charge_conjugation * w.transpose();
        c.basis = "dirac";
        return c;
    }
    if (basis != "chiral") {
        throw InvalidData("gamma basis '" + basis + "' is only available in dimension 4");
    }
    CliffordData c;
    c.dimension = dimension;
    c.basis = basis;
    if (dimension == 2) {
        c.gammas = {pauli(1), pauli(2)};
        c.chirality = pauli(3);
        c.charge_conjugation = kI * pauli(2);
        return c;
    }
    if (dimension == 1) {
        c.gammas = {identity(1)};
        c.charge_conjugation = identity(1);
        return c;
    }
    throw InvalidData("Clifford data available for d = 1, 2, 4 only, got " + std::to_string(dimension));
}

double CliffordResiduals::max() const {
    return std::max({anticommutation, hermitian, chirality, c_unitary, c_gamma, c_chirality, c_square});
}

CliffordResiduals check_clifford(const CliffordData& c) {
    CliffordResiduals r;
    const auto n = static_cast<Eigen::Index>(c.spinor_dim());
    const Matrix one = identity(n);
    const Matrix& cc = c.charge_conjugation;
    const Matrix c_inv = cc.adjoint();
    r.c_unitary = max_abs(cc * cc.adjoint() - one);
    r.c_square = max_abs(cc * cc.conjugate() + one);
    for (std::size_t mu = 0; mu < c.gammas.size(); ++mu) {
        const Matrix& g = c.gammas[mu];
        r.hermitian = std::max(r.hermitian, max_abs(g - g.adjoint()));
        for (std::size_t nu = 0; nu < c.gammas.size(); ++nu) {
            const Matrix expected = (mu == nu ? 2.0 : 0.0) * one;
            r.anticommutation = std::max(r.anticommutation, max_abs(g * c.gammas[nu] + c.gammas[nu] * g - expected));
        }
        r.c_gamma = std::max(r.c_gamma, max_abs(cc * g.conjugate() * c_inv + g));
        if (c.chirality) r.chirality = std::max(r.chirality, max_abs(*c.chirality * g + g * *c.chirality));
    }
    if (c.chirality) {
        const Matrix& g5 = *c.chirality;
        r.chirality = std::max({r.chirality, max_abs(g5 * g5 - one), max_abs(g5 - g5.adjoint())});
        r.c_chirality = max_abs(cc * g5.conjugate() * c_inv - g5);
    }
    return r;
}

}  // namespace finspec
