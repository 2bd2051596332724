#pragma once

// Periodic flat lattices and lattice-sampled field configurations.
//
// Sites are linearised row-major: the first axis varies slowest. All
// derivatives are periodic central differences (f(x+e_μ) − f(x−e_μ))/(2a).

#include <vector>

#include "finspec/finite_triple.hpp"

namespace finspec {

struct LatticeSpec {
    std::vector<int> dims;  ///< sites per axis, 1 ≤ d ≤ 4, each ≥ 3
    double spacing = 1.0;

    int dimension() const { return static_cast<int>(dims.size()); }
    int num_sites() const;
    std::vector<int> coords(int site) const;
    int site(const std::vector<int>& coords) const;
    /// Site reached from `site` by `step` lattice units along `axis` (periodic).
    int shift(int site, int axis, int step) const;
    double volume_element() const;  ///< a^d
};

/// Throws InvalidData unless 1 ≤ d ≤ 4, every axis has ≥ 3 sites and a > 0.
void validate(const LatticeSpec& lattice);

/// User-supplied curvature scalars at one site.
struct GravityScalars {
    double s = 0.0;        ///< scalar curvature
    double weyl_sq = 0.0;  ///< C_{μνρσ}C^{μνρσ}
    double euler = 0.0;    ///< R*R*
};

struct FieldConfig {
    LatticeSpec lattice;
    int dim_h = 0;
    std::vector<std::vector<Matrix>> gauge;  ///< B_μ(x), indexed [site][μ], anti-Hermitian
    std::vector<Matrix> phi;                 ///< Φ(x), Hermitian
    std::vector<GravityScalars> gravity;

    /// All fields zero, gravity scalars zero.
    static FieldConfig zero(const LatticeSpec& lattice, int dim_h);
};

/// Shape checks plus B† = −B, Φ† = Φ. When a triple is given, also checks that
/// each B_μ(x) lies in the image of τ and that Φ anticommutes with γ for even
/// triples. Throws InvalidData / DimensionError.
void validate(const FieldConfig& cfg, const FiniteTriple* triple = nullptr, double tol = kDefaultTolerance);

/// Periodic central difference of a matrix field along `axis`.
std::vector<Matrix> central_difference(const LatticeSpec& lattice, const std::vector<Matrix>& field, int axis);
std::vector<double> central_difference(const LatticeSpec& lattice, const std::vector<double>& field, int axis);

/// Geometric Laplacian Δf = −Σ_μ (f(x+e_μ) − 2f(x) + f(x−e_μ))/a².
std::vector<double> laplacian(const LatticeSpec& lattice, const std::vector<double>& field);

}  // namespace finspec
