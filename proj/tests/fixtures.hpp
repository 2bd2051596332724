#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "finspec/finite_triple.hpp"
#include "finspec/lattice.hpp"
#include "finspec/random.hpp"

namespace fixtures {

using finspec::AlgebraElement;
using finspec::cplx;
using finspec::FieldConfig;
using finspec::FiniteTriple;
using finspec::KOSignature;
using finspec::KrajewskiData;
using finspec::Matrix;

inline constexpr cplx I{0.0, 1.0};

/// Electrodynamics: A = C ⊕ C on E_L, E_R, conj(E_L), conj(E_R), KO 6.
inline KrajewskiData ed_data() {
    return {{1, 1}, {{0, 1}, {0, 1}, {1, 0}, {1, 0}}, KOSignature::from_dimension(6), {1, -1, -1, 1}};
}

/// Mass matrix family of the electrodynamics triple with complex parameter d.
inline Matrix ed_dirac(cplx d) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 1) = d;
    m(1, 0) = std::conj(d);
    m(2, 3) = std::conj(d);
    m(3, 2) = d;
    return m;
}

/// Yang-Mills: A = M_N(C) on H = M_N(C), KO 0, trivial grading.
inline KrajewskiData ym_data(int n) { return {{n}, {{0, 0}}, KOSignature::from_dimension(0), {1}}; }

/// Two summands with a diagonal slot and an off-diagonal pair of opposite
/// parity: admits Dirac operators that do not commute with the algebra.
inline KrajewskiData higgs_data(int n1 = 2, int n2 = 1) {
    return {{n1, n2}, {{0, 0}, {0, 1}, {1, 0}}, KOSignature::from_dimension(0), {1, -1, -1}};
}

/// Random valid Krajewski data. `mode` 0: random edges, 1: no off-diagonal
/// pairs, 2: every pair of summands connected.
inline KrajewskiData random_krajewski(std::mt19937_64& rng, int mode, int ko = -1) {
    std::uniform_int_distribution<int> n_summands(1, 4), dim(1, 2), coin(0, 1), ko_dist(0, 7), mult(1, 2);
    KrajewskiData d;
    d.ko = KOSignature::from_dimension(ko >= 0 ? ko : ko_dist(rng));
    const int l = n_summands(rng);
    for (int i = 0; i < l; ++i) d.dims.push_back(dim(rng));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < l; ++i) {
        for (int j = i + 1; j < l; ++j) {
            if (mode == 2 || (mode == 0 && coin(rng))) edges.emplace_back(i, j);
        }
    }
    std::vector<bool> touched(static_cast<std::size_t>(l), false);
    for (const auto& [i, j] : edges) {
        const int m = mult(rng);
        for (int c = 0; c < m; ++c) {
            d.pairs.emplace_back(i, j);
            d.pairs.emplace_back(j, i);
        }
        touched[static_cast<std::size_t>(i)] = touched[static_cast<std::size_t>(j)] = true;
    }
    // KO 6 forbids self-partnered diagonal slots; J² = −1 needs even multiplicity.
    const bool diag_allowed = d.ko.n != 6;
    const int diag_step = d.ko.eps == -1 ? 2 : 1;
    for (int i = 0; i < l; ++i) {
        if (!diag_allowed) continue;
        if (!touched[static_cast<std::size_t>(i)] || coin(rng)) {
            for (int c = 0; c < diag_step; ++c) d.pairs.emplace_back(i, i);
        }
    }
    if (!diag_allowed) {
        // isolated summands need an off-diagonal partner; join them to a neighbour
        for (int i = 0; i < l; ++i) {
            if (touched[static_cast<std::size_t>(i)]) continue;
            if (l == 1) {
                d.dims.push_back(1);
                d.pairs.emplace_back(0, 1);
                d.pairs.emplace_back(1, 0);
                touched[0] = true;
                break;
            }
            const int j = (i + 1) % l;
            d.pairs.emplace_back(i, j);
            d.pairs.emplace_back(j, i);
            touched[static_cast<std::size_t>(i)] = touched[static_cast<std::size_t>(j)] = true;
        }
    }
    if (d.ko.even()) {
        const auto slots = [&] {
            KrajewskiData tmp = d;
            tmp.grading.assign(d.pairs.size(), 1);
            return finspec::make_slots(tmp);
        }();
        const int epp = *d.ko.eps_double_prime;
        d.grading.assign(slots.size(), 0);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (d.grading[s] != 0) continue;
            const auto p = static_cast<std::size_t>(slots[s].partner);
            const int g = coin(rng) ? 1 : -1;
            d.grading[s] = g;
            if (p != s) d.grading[p] = epp * g;
        }
    }
    return d;
}

/// Smooth periodic test field on a box of side L = n·a.
inline double wave(const std::vector<double>& x, double box, int k_axis, double phase = 0.0) {
    const double two_pi = 2.0 * std::numbers::pi;
    return std::sin(two_pi * x[static_cast<std::size_t>(k_axis)] / box + phase);
}

/// exp(x) for anti-Hermitian x via the spectral decomposition of ix.
inline Matrix expm_anti_hermitian(const Matrix& x) {
    const Eigen::SelfAdjointEigenSolver<Matrix> es(I * x);
    finspec::Vector phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::polar(1.0, -es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline AlgebraElement expm_anti_hermitian(const AlgebraElement& x) {
    AlgebraElement u;
    for (const auto& b : x.blocks) u.blocks.push_back(expm_anti_hermitian(b));
    return u;
}

/// Analytic periodic fields on the box [0, 2π)^d for refinement studies.
struct SmoothFields {
    AlgebraElement b0, b1;  ///< anti-Hermitian gauge profiles
    AlgebraElement y0, y1;  ///< anti-Hermitian gauge-transformation profiles
    Matrix phi;             ///< admissible Dirac operator used as Higgs profile
};

inline SmoothFields make_smooth_fields(const FiniteTriple& t, const Matrix& phi, finspec::Rng& rng) {
    const auto& dims = t.data.dims;
    return {finspec::random_anti_hermitian_element(dims, rng, 0.8), finspec::random_anti_hermitian_element(dims, rng, 0.6),
            finspec::random_anti_hermitian_element(dims, rng, 0.9), finspec::random_anti_hermitian_element(dims, rng, 0.7),
            phi};
}

inline FieldConfig smooth_config(const FiniteTriple& t, const SmoothFields& f, int n, int d) {
    const double box = 2.0 * std::numbers::pi;
    finspec::LatticeSpec lat{std::vector<int>(static_cast<std::size_t>(d), n), box / n};
    FieldConfig cfg = FieldConfig::zero(lat, t.dim_h);
    for (int site = 0; site < lat.num_sites(); ++site) {
        const auto c = lat.coords(site);
        const double x0 = c.front() * lat.spacing, xl = c.back() * lat.spacing;
        for (int mu = 0; mu < d; ++mu) {
            const AlgebraElement x = f.b0 * cplx(std::sin(x0 + 0.5 * mu)) + f.b1 * cplx(0.7 * std::cos(xl));
            cfg.gauge[static_cast<std::size_t>(site)][static_cast<std::size_t>(mu)] = finspec::tau(t, x);
        }
        cfg.phi[static_cast<std::size_t>(site)] = (1.0 + 0.3 * std::sin(x0) * std::cos(xl)) * f.phi;
        cfg.gravity[static_cast<std::size_t>(site)] = {0.2 + 0.1 * std::cos(x0), 0.05 * std::sin(xl), 0.01};
    }
    return cfg;
}

inline std::vector<AlgebraElement> smooth_gauge(const FieldConfig& cfg, const SmoothFields& f) {
    const auto& lat = cfg.lattice;
    std::vector<AlgebraElement> u;
    for (int site = 0; site < lat.num_sites(); ++site) {
        const auto c = lat.coords(site);
        const double x0 = c.front() * lat.spacing, xl = c.back() * lat.spacing;
        u.push_back(expm_anti_hermitian(f.y0 * cplx(std::sin(x0)) + f.y1 * cplx(0.5 * std::cos(x0 + xl))));
    }
    return u;
}

}  // namespace fixtures
