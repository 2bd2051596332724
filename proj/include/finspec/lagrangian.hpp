#pragma once

// Local spectral-action Lagrangian of an almost-commutative manifold,
// evaluated on lattice-sampled fields with the flat Euclidean metric.
//
//   L = N·L_M + L_B + L_H
//   L_M = f4Λ⁴/(2π²) − f2Λ²s/(24π²) + f0/(16π²)·(Δs/30 − C²/20 + 11·R*R*/360)
//   L_B = f0/(24π²)·Σ_{μ,ν} tr(F_{μν}F_{μν})
//   L_H = −2f2Λ²/(4π²)·trΦ² + f0/(8π²)·trΦ⁴ + f0/(24π²)·Δ(trΦ²)
//         + f0/(48π²)·s·trΦ² + f0/(8π²)·Σ_μ tr(D_μΦ D_μΦ)
//
// tr is the trace over the finite fibre H_F only, Δ = −Σ_μ ∂_μ², and
// tr(F F) is reported with its literal (non-positive) sign.

#include <vector>

#include "finspec/lattice.hpp"

namespace finspec {

struct Moments {
    double f0 = 1.0;  ///< f(0)
    double f2 = 1.0;
    double f4 = 1.0;
    double lambda = 1.0;  ///< cutoff Λ
};

/// Throws InvalidData unless all moments are finite and Λ > 0.
void validate(const Moments& m);

/// F_{μν}(x) for μ < ν; `pairs[k]` lists which (μ, ν) entry k holds.
struct CurvatureField {
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<Matrix>> values;  ///< [site][pair]

    /// F_{μν} at a site for any μ, ν (antisymmetric; zero on the diagonal).
    Matrix at(int site, int mu, int nu) const;
};

CurvatureField curvature(const FieldConfig& cfg);

/// D_μΦ(x), indexed [site][μ].
std::vector<std::vector<Matrix>> covariant_derivative(const FieldConfig& cfg);

std::vector<double> density_gauge(const FieldConfig& cfg, const Moments& m);

/// Individual Higgs-sector terms at one site.
struct HiggsDensity {
    double mass = 0.0;       ///< −2f2Λ²/(4π²)·trΦ²
    double quartic = 0.0;    ///< f0/(8π²)·trΦ⁴
    double boundary = 0.0;   ///< f0/(24π²)·Δ(trΦ²)
    double curvature = 0.0;  ///< f0/(48π²)·s·trΦ²
    double kinetic = 0.0;    ///< f0/(8π²)·Σ_μ tr(D_μΦ D_μΦ)

    double total() const { return mass + quartic + boundary + curvature + kinetic; }
};

std::vector<HiggsDensity> density_higgs_terms(const FieldConfig& cfg, const Moments& m);
std::vector<double> density_higgs(const FieldConfig& cfg, const Moments& m);

std::vector<double> density_gravity(const FieldConfig& cfg, const Moments& m, int fibre_rank);

struct ActionBreakdown {
    double total = 0.0;
    double gravity = 0.0;
    double gauge = 0.0;
    double higgs = 0.0;
    double boundary = 0.0;  ///< Δ(trΦ²) part of the Higgs sector, sums to zero on the torus
};

/// a^d·Σ_x (gravity + gauge + higgs), with fibre rank N = dim_h. Sites are
/// summed in index order with compensated accumulation.
ActionBreakdown total_action_breakdown(const FieldConfig& cfg, const Moments& m);
double total_action(const FieldConfig& cfg, const Moments& m);

/// Site-wise gauge transformation with U(x) = u(x)·J·u(x)·J*:
/// B_μ ↦ U B_μ U* + U ∂_μ(U*),  Φ ↦ U Φ U*.
FieldConfig gauge_transform_fields(const FiniteTriple& t, const FieldConfig& cfg,
                                   const std::vector<AlgebraElement>& u, double tol = kDefaultTolerance);

}  // namespace finspec
