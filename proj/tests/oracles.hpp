#pragma once

// Reference computations that rebuild their answer from raw inputs, without
// going through the library routine under test.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "finspec/finite_triple.hpp"
#include "finspec/lattice_product.hpp"
#include "finspec/linalg.hpp"

namespace oracles {

using finspec::AlgebraElement;
using finspec::FiniteTriple;
using finspec::KrajewskiData;
using finspec::Matrix;

/// Connectivity classes of the summands by depth-first search over m_ij > 0.
inline int count_classes(const KrajewskiData& d) {
    const int l = d.num_summands();
    std::vector<int> seen(static_cast<std::size_t>(l), 0);
    int classes = 0;
    for (int s = 0; s < l; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++classes;
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            for (const auto& [a, b] : d.pairs) {
                if (a == i && !seen[static_cast<std::size_t>(b)]) {
                    seen[static_cast<std::size_t>(b)] = 1;
                    stack.push_back(b);
                }
            }
        }
    }
    return classes;
}

/// Complex dimension of {a ∈ A_F : aJ = Ja*}, i.e. L(a)U = U L(a)ᵀ, by SVD.
inline int aj_dimension(const FiniteTriple& t) {
    std::vector<Matrix> images;
    for (const auto& e : t.generators()) {
        const Matrix l = t.left_action(e);
        images.push_back(l * t.j_matrix - t.j_matrix * l.transpose());
    }
    Matrix m(t.dim_h * t.dim_h, static_cast<Eigen::Index>(images.size()));
    for (std::size_t k = 0; k < images.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = images[k].reshaped();
    const Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) rank += s(k) > 1e-9 * std::max(1.0, s(0)) ? 1 : 0;
    return static_cast<int>(images.size()) - rank;
}

/// Largest defect of Hermiticity, J-compatibility, grading (when `even`) and
/// the first-order condition over all pairs of matrix units. The right action
/// is rebuilt as U·conj(L(b))·U†.
inline double moduli_residual(const FiniteTriple& t, const Matrix& d, bool even) {
    using finspec::max_abs;
    const Matrix& u = t.j_matrix;
    double r = max_abs(d - d.adjoint());
    r = std::max(r, max_abs(u * d.conjugate() * u.adjoint() - double(t.ko().eps_prime) * d));
    if (even) r = std::max(r, max_abs(d * t.gamma + t.gamma * d));
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < t.data.dims.size(); ++i) {
        const int ni = t.data.dims[i];
        for (int k = 0; k < ni; ++k) {
            for (int l = 0; l < ni; ++l) {
                AlgebraElement a = AlgebraElement::zero(t.data.dims);
                a.blocks[i](k, l) = 1.0;
                left.push_back(t.left_action(a));
                right.push_back(u * left.back().conjugate() * u.adjoint());
            }
        }
    }
    for (const auto& la : left) {
        const Matrix da = d * la - la * d;
        for (const auto& rb : right) r = std::max(r, max_abs(da * rb - rb * da));
    }
    return r;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) k.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
    return k;
}

/// Spectrum of a translation-invariant configuration, assembled momentum by
/// momentum: Σ_μ γ^μ ⊗ (sin(k_μ a)/a − i B_μ) + γ5 ⊗ Φ.
inline std::vector<double> fourier_spectrum(const finspec::CliffordData& c, const finspec::FieldConfig& cfg) {
    const auto& lat = cfg.lattice;
    const int d = lat.dimension();
    const Matrix id_h = finspec::identity(cfg.dim_h);
    const finspec::cplx i_unit(0.0, 1.0);
    std::vector<double> eig;
    for (int m = 0; m < lat.num_sites(); ++m) {
        const auto j = lat.coords(m);
        Matrix block = Matrix::Zero(c.spinor_dim() * cfg.dim_h, c.spinor_dim() * cfg.dim_h);
        for (int mu = 0; mu < d; ++mu) {
            const auto mu_s = static_cast<std::size_t>(mu);
            const double k = 2.0 * std::numbers::pi * j[mu_s] / lat.dims[mu_s];
            const Matrix covariant = std::sin(k) / lat.spacing * id_h - i_unit * cfg.gauge[0][mu_s];
            block += kron(c.gammas[mu_s], covariant);
        }
        if (c.chirality) block += kron(*c.chirality, cfg.phi[0]);
        const finspec::RealVector e = Eigen::SelfAdjointEigenSolver<Matrix>(block, Eigen::EigenvaluesOnly).eigenvalues();
        eig.insert(eig.end(), e.data(), e.data() + e.size());
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace oracles
