#pragma once

#include <utility>
#include <vector>

#include "finspec/finite_triple.hpp"

namespace finspec {

using OneFormTerms = std::vector<std::pair<AlgebraElement, AlgebraElement>>;

/// Generalised one-form Σ_j a_j[D, b_j] evaluated on H_F.
struct OneForm {
    OneFormTerms terms;
    Matrix matrix;
    double hermiticity_residual = 0.0;  ///< max |A − A†|

    bool self_adjoint(double tol = kDefaultTolerance) const { return hermiticity_residual <= tol; }
};

OneForm one_form(const FiniteTriple& t, const OneFormTerms& terms);

/// Wraps an already evaluated matrix (e.g. A^u) as a one-form without terms.
OneForm one_form_from_matrix(const Matrix& a);

/// D_A = D + A + ε′·J·A·J*. Throws PreconditionError when A is not self-adjoint.
Matrix fluctuate(const FiniteTriple& t, const OneForm& a, double tol = kDefaultTolerance);

/// Φ = D + φ + J·φ·J* with φ = Σ a_j[D, b_j].
Matrix phi_field(const FiniteTriple& t, const OneFormTerms& terms, double tol = kDefaultTolerance);

struct GaugeTransformedForm {
    Matrix a_u;                   ///< u·A·u* + u·[D, u*]
    Matrix gauge;                 ///< U = u·J·u·J*
    double covariance_residual;   ///< |U·D_A·U* − D_{A^u}|
};

/// A^u for a unitary algebra element u, together with the residual of the
/// covariance identity U·D_A·U* = D + A^u + ε′·J·A^u·J*.
GaugeTransformedForm gauge_transform_fluctuation(const FiniteTriple& t, const OneForm& a, const AlgebraElement& u,
                                                 double tol = kDefaultTolerance);

}  // namespace finspec
