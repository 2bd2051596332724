#pragma once

// Almost-commutative product operators on small periodic lattices.
//
//   D = −i Σ_μ γ^μ ⊗ (∂_μ + B_μ(x)) + γ5 ⊗ Φ(x)
//   J = (1_sites ⊗ C ⊗ U_F)∘conj,   γ = 1_sites ⊗ γ5 ⊗ γ_F
//
// on L²(sites) ⊗ C^spinor ⊗ H_F with basis index (site·spinor + s)·dim_h + h.
// ∂_μ is the periodic central difference, which keeps D Hermitian. Lattice
// doublers are present and not removed.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "finspec/clifford.hpp"
#include "finspec/lattice.hpp"

namespace finspec {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

struct ProductOperator {
    LatticeSpec lattice;
    CliffordData clifford;
    int dim_h = 0;
    KOSignature finite_ko;
    Matrix dirac;                       ///< D_total (dense, Hermitian)
    SparseMatrix j_matrix;              ///< J_total(v) = j_matrix·conj(v)
    std::optional<SparseMatrix> gamma;  ///< absent for d = 1

    Eigen::Index dimension() const { return dirac.rows(); }
    Eigen::Index index(int site, int spinor, int h) const;
    /// J_total applied to a vector.
    Vector apply_j(const Vector& v) const;
};

/// Requires a FieldConfig on the same lattice as `clifford` has dimensions,
/// dim_h equal to the triple's and, for d = 1, Φ = 0. Throws DimensionError.
ProductOperator build_product(const CliffordData& clifford, const FieldConfig& cfg, const FiniteTriple& t);

struct ProductKOReport {
    int eps = 0;
    int eps_prime = 0;
    int eps_double_prime = 0;
    double j2_residual = 0.0;  ///< |J² − ε|
    double jd_residual = 0.0;  ///< |JD − ε′DJ|
    double jg_residual = 0.0;  ///< |Jγ − ε″γJ|
    double gamma_d_residual = 0.0;  ///< |γD + Dγ|
    std::optional<int> matched_ko;  ///< row of the sign table the measured signs form
    int expected_ko = 0;            ///< 4 + k mod 8
    double tolerance = kDefaultTolerance;

    bool passed() const;
};

/// Measures the signs of the product real structure. Requires d = 4.
ProductKOReport verify_product_ko(const ProductOperator& p, double tol = kDefaultTolerance);

/// Eigenvalues of D_total in ascending order.
RealVector spectrum(const ProductOperator& p);

/// Σ_k f(λ_k/Λ), compensated sum in ascending eigenvalue order.
double spectral_action_trace(const RealVector& eigenvalues, const std::function<double(double)>& f, double lambda);
double spectral_action_trace(const ProductOperator& p, const std::function<double(double)>& f, double lambda);

/// ⟨Jξ, Dξ′⟩ = ξᵀ·U†·D·ξ′ for even vectors (γξ = ξ). Throws
/// PreconditionError for non-even input, DimensionError on size mismatch.
cplx fermionic_form(const ProductOperator& p, const Vector& xi, const Vector& xi_prime,
                    double tol = kDefaultTolerance);

/// Projection (1 + γ)/2 onto the even subspace.
Vector even_part(const ProductOperator& p, const Vector& v);

}  // namespace finspec
