#include "finspec/lattice_product.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace finspec {

namespace {

using Triplet = Eigen::Triplet<cplx>;

// 1_sites ⊗ a ⊗ b as a sparse matrix.
SparseMatrix site_diagonal(int sites, const Matrix& a, const Matrix& b) {
    const Eigen::Index na = a.rows(), nb = b.rows();
    const Eigen::Index block = na * nb;
    std::vector<Triplet> entries;
    for (int x = 0; x < sites; ++x) {
        for (Eigen::Index s = 0; s < na; ++s) {
            for (Eigen::Index t = 0; t < na; ++t) {
                if (a(s, t) == cplx{}) continue;
                for (Eigen::Index h = 0; h < nb; ++h) {
                    for (Eigen::Index k = 0; k < nb; ++k) {
                        const cplx v = a(s, t) * b(h, k);
                        if (v == cplx{}) continue;
                        entries.emplace_back(x * block + s * nb + h, x * block + t * nb + k, v);
                    }
                }
            }
        }
    }
    SparseMatrix m(sites * block, sites * block);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

int sign_of(double residual_plus, double residual_minus) { return residual_plus <= residual_minus ? 1 : -1; }

}  // namespace

Eigen::Index ProductOperator::index(int site, int spinor, int h) const {
    return (static_cast<Eigen::Index>(site) * clifford.spinor_dim() + spinor) * dim_h + h;
}

Vector ProductOperator::apply_j(const Vector& v) const { return j_matrix * v.conjugate(); }

ProductOperator build_product(const CliffordData& clifford, const FieldConfig& cfg, const FiniteTriple& t) {
    validate(cfg.lattice);
    if (cfg.lattice.dimension() != clifford.dimension) {
        throw DimensionError("lattice has dimension " + std::to_string(cfg.lattice.dimension()) +
                             " but the Clifford data is for dimension " + std::to_string(clifford.dimension));
    }
    if (cfg.dim_h != t.dim_h) {
        throw DimensionError("field configuration has dim_h " + std::to_string(cfg.dim_h) + " but the triple has " +
                             std::to_string(t.dim_h));
    }
    const auto sites = static_cast<std::size_t>(cfg.lattice.num_sites());
    if (cfg.gauge.size() != sites || cfg.phi.size() != sites) {
        throw DimensionError("field configuration does not match the lattice size");
    }
    if (!clifford.chirality) {
        for (const auto& phi : cfg.phi) {
            if (max_abs(phi) > 0.0) throw DimensionError("a scalar field needs a chirality operator (d = 1 has none)");
        }
    }

    ProductOperator p;
    p.lattice = cfg.lattice;
    p.clifford = clifford;
    p.dim_h = t.dim_h;
    p.finite_ko = t.ko();
    const int ns = clifford.spinor_dim();
    const int nh = t.dim_h;
    const Eigen::Index n = static_cast<Eigen::Index>(sites) * ns * nh;
    p.dirac = Matrix::Zero(n, n);
    const double half_inv_a = 1.0 / (2.0 * cfg.lattice.spacing);
    const cplx minus_i{0.0, -1.0};

    for (int x = 0; x < static_cast<int>(sites); ++x) {
        const auto xs = static_cast<std::size_t>(x);
        for (int mu = 0; mu < clifford.dimension; ++mu) {
            const Matrix g = minus_i * clifford.gammas[static_cast<std::size_t>(mu)];
            const int fwd = cfg.lattice.shift(x, mu, 1);
            const int bwd = cfg.lattice.shift(x, mu, -1);
            const Matrix& b = cfg.gauge[xs][static_cast<std::size_t>(mu)];
            for (int s = 0; s < ns; ++s) {
                for (int r = 0; r < ns; ++r) {
                    const cplx gsr = g(s, r);
                    if (gsr == cplx{}) continue;
                    for (int h = 0; h < nh; ++h) {
                        p.dirac(p.index(x, s, h), p.index(fwd, r, h)) += gsr * half_inv_a;
                        p.dirac(p.index(x, s, h), p.index(bwd, r, h)) -= gsr * half_inv_a;
                    }
                    p.dirac.block(p.index(x, s, 0), p.index(x, r, 0), nh, nh) += gsr * b;
                }
            }
        }
        if (clifford.chirality) {
            const Matrix& g5 = *clifford.chirality;
            for (int s = 0; s < ns; ++s) {
                for (int r = 0; r < ns; ++r) {
                    if (g5(s, r) == cplx{}) continue;
                    p.dirac.block(p.index(x, s, 0), p.index(x, r, 0), nh, nh) += g5(s, r) * cfg.phi[xs];
                }
            }
        }
    }

    p.j_matrix = site_diagonal(static_cast<int>(sites), clifford.charge_conjugation, t.j_matrix);
    if (clifford.chirality) p.gamma = site_diagonal(static_cast<int>(sites), *clifford.chirality, t.gamma);
    return p;
}

bool ProductKOReport::passed() const {
    return matched_ko && *matched_ko == expected_ko && j2_residual <= tolerance && jd_residual <= tolerance &&
           jg_residual <= tolerance && gamma_d_residual <= tolerance;
}

ProductKOReport verify_product_ko(const ProductOperator& p, double tol) {
    if (p.clifford.dimension != 4 || !p.gamma) {
        throw PreconditionError("verify_product_ko needs a four-dimensional product");
    }
    ProductKOReport r;
    r.tolerance = tol;
    const SparseMatrix& j = p.j_matrix;
    const SparseMatrix& g = *p.gamma;
    const Matrix one = identity(j.rows());

    // J² = U·conj(U)
    const Matrix j2 = Matrix(SparseMatrix(j * SparseMatrix(j.conjugate())));
    const double j2p = max_abs(j2 - one), j2m = max_abs(j2 + one);
    r.eps = sign_of(j2p, j2m);
    r.j2_residual = std::min(j2p, j2m);

    // J·D = U·conj(D)·conj(·), D·J = D·U·conj(·)
    const Matrix jd = j * p.dirac.conjugate();
    const Matrix dj = p.dirac * j;
    const double jdp = max_abs(jd - dj), jdm = max_abs(jd + dj);
    r.eps_prime = sign_of(jdp, jdm);
    r.jd_residual = std::min(jdp, jdm);

    const Matrix jg = Matrix(SparseMatrix(j * SparseMatrix(g.conjugate())));
    const Matrix gj = Matrix(SparseMatrix(g * j));
    const double jgp = max_abs(jg - gj), jgm = max_abs(jg + gj);
    r.eps_double_prime = sign_of(jgp, jgm);
    r.jg_residual = std::min(jgp, jgm);

    r.gamma_d_residual = max_abs(Matrix(g * p.dirac) + Matrix(p.dirac * g));
    r.matched_ko = ko_dimension_from_signs(r.eps, r.eps_prime, r.eps_double_prime);
    r.expected_ko = (4 + p.finite_ko.n) % 8;
    return r;
}

RealVector spectrum(const ProductOperator& p) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(p.dirac, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

double spectral_action_trace(const RealVector& eigenvalues, const std::function<double(double)>& f, double lambda) {
    if (!(lambda > 0.0)) throw InvalidData("cutoff Lambda must be positive");
    CompensatedSum sum;
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) sum.add(f(eigenvalues(k) / lambda));
    return sum.value();
}

double spectral_action_trace(const ProductOperator& p, const std::function<double(double)>& f, double lambda) {
    return spectral_action_trace(spectrum(p), f, lambda);
}

Vector even_part(const ProductOperator& p, const Vector& v) {
    if (!p.gamma) throw PreconditionError("product without chirality has no even subspace");
    return 0.5 * (v + *p.gamma * v);
}

cplx fermionic_form(const ProductOperator& p, const Vector& xi, const Vector& xi_prime, double tol) {
    if (xi.size() != p.dimension() || xi_prime.size() != p.dimension()) {
        throw DimensionError("fermionic_form: vectors must have length " + std::to_string(p.dimension()));
    }
    if (!p.gamma) throw PreconditionError("fermionic_form needs a graded product");
    const double odd = std::max((*p.gamma * xi - xi).cwiseAbs().maxCoeff(),
                                (*p.gamma * xi_prime - xi_prime).cwiseAbs().maxCoeff());
    if (odd > tol) throw PreconditionError("fermionic_form: vectors are not even (residual " + std::to_string(odd) + ")");
    const Vector jxi = p.apply_j(xi);
    return jxi.dot(p.dirac * xi_prime);
}

}  // namespace finspec
