#include "finspec/fluctuation.hpp"

#include <string>

namespace finspec {

OneForm one_form(const FiniteTriple& t, const OneFormTerms& terms) {
    OneForm f;
    f.terms = terms;
    f.matrix = Matrix::Zero(t.dim_h, t.dim_h);
    for (const auto& [a, b] : terms) {
        f.matrix += t.left_action(a) * commutator(t.dirac, t.left_action(b));
    }
    f.hermiticity_residual = max_abs(f.matrix - f.matrix.adjoint());
    return f;
}

OneForm one_form_from_matrix(const Matrix& a) {
    OneForm f;
    f.matrix = a;
    f.hermiticity_residual = max_abs(a - a.adjoint());
    return f;
}

Matrix fluctuate(const FiniteTriple& t, const OneForm& a, double tol) {
    if (a.matrix.rows() != t.dim_h || a.matrix.cols() != t.dim_h) {
        throw DimensionError("fluctuate: one-form has the wrong size");
    }
    if (!a.self_adjoint(tol)) {
        throw PreconditionError("fluctuate: one-form is not self-adjoint (residual " +
                                std::to_string(a.hermiticity_residual) + ")");
    }
    return t.dirac + a.matrix + static_cast<double>(t.ko().eps_prime) * t.conjugate_by_j(a.matrix);
}

Matrix phi_field(const FiniteTriple& t, const OneFormTerms& terms, double tol) {
    const OneForm phi = one_form(t, terms);
    if (!phi.self_adjoint(tol)) {
        throw PreconditionError("phi_field: scalar fluctuation is not self-adjoint (residual " +
                                std::to_string(phi.hermiticity_residual) + ")");
    }
    return t.dirac + phi.matrix + t.conjugate_by_j(phi.matrix);
}

GaugeTransformedForm gauge_transform_fluctuation(const FiniteTriple& t, const OneForm& a, const AlgebraElement& u,
                                                 double tol) {
    GaugeTransformedForm out;
    out.gauge = gauge_element(t, u, tol);  // validates unitarity
    const Matrix lu = t.left_action(u);
    const Matrix lu_star = lu.adjoint();
    out.a_u = lu * a.matrix * lu_star + lu * commutator(t.dirac, lu_star);

    const double eps_prime = t.ko().eps_prime;
    const Matrix lhs = out.gauge * (t.dirac + a.matrix + eps_prime * t.conjugate_by_j(a.matrix)) * out.gauge.adjoint();
    const Matrix rhs = t.dirac + out.a_u + eps_prime * t.conjugate_by_j(out.a_u);
    out.covariance_residual = max_abs(lhs - rhs);
    return out;
}

}  // namespace finspec
