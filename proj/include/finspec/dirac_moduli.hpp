#pragma once

#include <vector>

#include "finspec/finite_triple.hpp"

namespace finspec {

/// Orthonormal real basis (under Re Tr(X†Y)) of the admissible Dirac
/// operators of a finite triple.
struct ModuliBasis {
    std::vector<Matrix> basis;
    int dim_h = 0;
    int real_dim = 0;
    std::vector<double> residuals;  ///< largest constraint residual per basis element
    /// Spectral gap of the constraint system (see Nullspace::gap_ratio); the
    /// smallest over the solve stages.
    double gap_ratio = 0.0;
};

/// Residuals of the individual constraints on a Hermitian candidate D.
struct ConstraintResiduals {
    double hermitian = 0.0;
    double j_compat = 0.0;     ///< U·conj(D)·U† − ε′D
    double gamma_anti = 0.0;   ///< Dγ + γD (zero when not requested)
    double first_order = 0.0;  ///< max over generator pairs of [[D,a],JbJ*]

    double max() const;
};

/// Evaluates each constraint directly on the triple's structure matrices.
/// The grading constraint applies only when `even` is set and the triple has
/// even KO-dimension; the same rule holds for solve_moduli.
ConstraintResiduals moduli_residuals(const FiniteTriple& t, const Matrix& d, bool even);

/// Solves D = D*, DJ = ε′JD, (even) Dγ = −γD, and the first-order condition on
/// matrix-unit generator pairs, as a real nullspace problem on the
/// dim_H²-dimensional space of Hermitian matrices.
ModuliBasis solve_moduli(const FiniteTriple& t, bool even = true);

/// Orthogonal projection Σ_k B_k·Re Tr(B_k†X).
Matrix project_onto_moduli(const ModuliBasis& m, const Matrix& x);

}  // namespace finspec
