#include "finspec/dirac_moduli.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "finspec/linalg.hpp"

namespace finspec {

namespace {

using Sparse = Eigen::SparseMatrix<cplx>;

struct Actions {
    std::vector<Sparse> left;
    std::vector<Sparse> right;
};

Actions sparse_actions(const FiniteTriple& t) {
    Actions act;
    for (const auto& g : t.generators()) {
        act.left.push_back(t.left_action(g).sparseView());
        act.right.push_back(t.right_action(g).sparseView());
    }
    return act;
}

double first_order_residual(const Matrix& d, const Actions& act) {
    double r = 0.0;
    for (const auto& la : act.left) {
        const Matrix da = d * la - la * d;
        for (const auto& rb : act.right) r = std::max(r, max_abs(Matrix(da * rb - rb * da)));
    }
    return r;
}

ConstraintResiduals residuals_with(const FiniteTriple& t, const Matrix& d, bool even, const Actions& act) {
    ConstraintResiduals r;
    r.hermitian = max_abs(d - d.adjoint());
    r.j_compat = max_abs(t.conjugate_by_j(d) - static_cast<double>(t.ko().eps_prime) * d);
    if (even) r.gamma_anti = max_abs(d * t.gamma + t.gamma * d);
    r.first_order = first_order_residual(d, act);
    return r;
}

// U has exactly one unit-modulus entry per column: column k maps to row sigma[k].
bool phase_permutation(const Matrix& u, std::vector<Eigen::Index>& sigma, std::vector<cplx>& phase) {
    const Eigen::Index n = u.rows();
    sigma.assign(static_cast<std::size_t>(n), -1);
    phase.assign(static_cast<std::size_t>(n), cplx(0.0));
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const cplx v = u(r, c);
            if (v == cplx(0.0)) continue;
            if (sigma[static_cast<std::size_t>(c)] >= 0 || std::abs(std::abs(v) - 1.0) > 1e-14) return false;
            sigma[static_cast<std::size_t>(c)] = r;
            phase[static_cast<std::size_t>(c)] = v;
        }
        if (sigma[static_cast<std::size_t>(c)] < 0) return false;
    }
    return true;
}

bool is_diagonal(const Matrix& g) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            if (r != c && g(r, c) != cplx(0.0)) return false;
        }
    }
    return true;
}

// Stage 1 when U is a phase permutation and γ is diagonal: the constraints
// D = D†, D = ε′U·conj(D)·U†, D = −γDγ only relate the entries in an orbit
// {(r,c), (c,r), (σr,σc), (σc,σr)}, so the solution space splits into
// orbit-local pieces of real dimension at most eight.
std::vector<Sparse> stage1_orbits(const FiniteTriple& t, bool even, const std::vector<Eigen::Index>& sigma,
                                  const std::vector<cplx>& phase) {
    const Eigen::Index n = t.dim_h;
    const double eps_prime = t.ko().eps_prime;
    std::vector<char> seen(static_cast<std::size_t>(n * n), 0);
    std::vector<Sparse> out;
    auto key = [n](Eigen::Index r, Eigen::Index c) { return static_cast<std::size_t>(r * n + c); };

    for (Eigen::Index r0 = 0; r0 < n; ++r0) {
        for (Eigen::Index c0 = 0; c0 < n; ++c0) {
            if (seen[key(r0, c0)]) continue;
            const auto s = [&](Eigen::Index k) { return sigma[static_cast<std::size_t>(k)]; };
            std::vector<std::pair<Eigen::Index, Eigen::Index>> orbit;
            for (const auto& p : {std::pair{r0, c0}, std::pair{c0, r0}, std::pair{s(r0), s(c0)}, std::pair{s(c0), s(r0)}}) {
                if (std::find(orbit.begin(), orbit.end(), p) == orbit.end()) orbit.push_back(p);
            }
            for (const auto& [r, c] : orbit) seen[key(r, c)] = 1;
            const auto m = static_cast<Eigen::Index>(orbit.size());
            auto local = [&](Eigen::Index r, Eigen::Index c) {
                return static_cast<Eigen::Index>(std::find(orbit.begin(), orbit.end(), std::pair{r, c}) - orbit.begin());
            };

            // coordinates (Re z_p, Im z_p) for p in the orbit; each map minus the identity
            RealMatrix rows = RealMatrix::Zero((even ? 6 : 4) * m, 2 * m);
            for (Eigen::Index p = 0; p < m; ++p) {
                const auto [r, c] = orbit[static_cast<std::size_t>(p)];
                // transpose-conjugate: z E_rc -> conj(z) E_cr
                const Eigen::Index q = local(c, r);
                rows(2 * q, 2 * p) += 1.0;
                rows(2 * q + 1, 2 * p + 1) -= 1.0;
                // J-conjugation: z E_rc -> ε′ u_r conj(u_c) conj(z) E_{σr,σc}
                const cplx w = eps_prime * phase[static_cast<std::size_t>(r)] * std::conj(phase[static_cast<std::size_t>(c)]);
                const Eigen::Index qj = 2 * m + 2 * local(s(r), s(c));
                rows(qj, 2 * p) += w.real();
                rows(qj + 1, 2 * p) += w.imag();
                rows(qj, 2 * p + 1) += w.imag();
                rows(qj + 1, 2 * p + 1) -= w.real();
                if (even) {
                    const double g = -(t.gamma(r, r) * t.gamma(c, c)).real();
                    rows(4 * m + 2 * p, 2 * p) += g;
                    rows(4 * m + 2 * p + 1, 2 * p + 1) += g;
                }
            }
            for (Eigen::Index b = 0; b < (even ? 3 : 2); ++b) {
                rows.block(2 * m * b, 0, 2 * m, 2 * m) -= RealMatrix::Identity(2 * m, 2 * m);
            }
            Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullV);
            const RealVector sv = svd.singularValues();
            for (Eigen::Index k = 0; k < 2 * m; ++k) {
                const double sk = k < sv.size() ? sv(k) : 0.0;
                if (sk > 1e-12) continue;
                const RealVector v = svd.matrixV().col(k);
                Sparse e(n, n);
                std::vector<Eigen::Triplet<cplx>> trip;
                for (Eigen::Index p = 0; p < m; ++p) {
                    const cplx z(v(2 * p), v(2 * p + 1));
                    if (z != cplx(0.0)) trip.emplace_back(orbit[static_cast<std::size_t>(p)].first, orbit[static_cast<std::size_t>(p)].second, z);
                }
                e.setFromTriplets(trip.begin(), trip.end());
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

// Stage 1 for general frames: nullspace over the full Hermitian basis.
std::vector<Sparse> stage1_dense(const FiniteTriple& t, bool even, double& gap_ratio) {
    const Eigen::Index n = t.dim_h;
    const double eps_prime = t.ko().eps_prime;
    const auto herm = hermitian_basis(n);
    const auto ncols = static_cast<Eigen::Index>(herm.size());
    const Eigen::Index block = 2 * n * n;
    RealMatrix linear(block * (even ? 2 : 1), ncols);
    for (Eigen::Index k = 0; k < ncols; ++k) {
        const Matrix& e = herm[static_cast<std::size_t>(k)];
        linear.col(k).head(block) = realify(t.conjugate_by_j(e) - eps_prime * e);
        if (even) linear.col(k).tail(block) = realify(e * t.gamma + t.gamma * e);
    }
    RowCompressor rc(ncols);
    rc.add_rows(linear);
    const Nullspace ns = nullspace(rc);
    gap_ratio = ns.gap_ratio;
    std::vector<Sparse> out;
    for (Eigen::Index q = 0; q < ns.basis.cols(); ++q) {
        Matrix m = Matrix::Zero(n, n);
        for (Eigen::Index k = 0; k < ncols; ++k) m += ns.basis(k, q) * herm[static_cast<std::size_t>(k)];
        out.push_back(m.sparseView());
    }
    return out;
}

}  // namespace

double ConstraintResiduals::max() const { return std::max({hermitian, j_compat, gamma_anti, first_order}); }

ConstraintResiduals moduli_residuals(const FiniteTriple& t, const Matrix& d, bool even) {
    if (d.rows() != t.dim_h || d.cols() != t.dim_h) throw DimensionError("moduli_residuals: matrix has the wrong size");
    return residuals_with(t, d, even && t.ko().even(), sparse_actions(t));
}

ModuliBasis solve_moduli(const FiniteTriple& t, bool even) {
    const Eigen::Index n = t.dim_h;
    even = even && t.ko().even();
    ModuliBasis out;
    out.dim_h = static_cast<int>(n);
    out.gap_ratio = std::numeric_limits<double>::infinity();

    std::vector<Eigen::Index> sigma;
    std::vector<cplx> phase;
    std::vector<Sparse> candidates;
    if (phase_permutation(t.j_matrix, sigma, phase) && (!even || is_diagonal(t.gamma))) {
        candidates = stage1_orbits(t, even, sigma, phase);
    } else {
        candidates = stage1_dense(t, even, out.gap_ratio);
    }

    // Stage 2: first-order condition on matrix-unit generator pairs, restricted
    // to the stage-1 solutions. Only nonzero entries of the commutators are
    // stacked as rows.
    const Actions act = sparse_actions(t);
    const auto k1 = static_cast<Eigen::Index>(candidates.size());
    RealMatrix coeffs = RealMatrix::Identity(k1, k1);
    if (k1 > 0) {
        RowCompressor stage2(k1);
        std::vector<Sparse> da(static_cast<std::size_t>(k1));
        std::vector<Sparse> comm(static_cast<std::size_t>(k1));
        for (const auto& la : act.left) {
            bool any = false;
            for (Eigen::Index q = 0; q < k1; ++q) {
                const Sparse& c = candidates[static_cast<std::size_t>(q)];
                da[static_cast<std::size_t>(q)] = (c * la - la * c).pruned();
                any = any || da[static_cast<std::size_t>(q)].nonZeros() > 0;
            }
            if (!any) continue;
            for (const auto& rb : act.right) {
                std::unordered_map<Eigen::Index, Eigen::Index> row_of;
                for (Eigen::Index q = 0; q < k1; ++q) {
                    const Sparse& d = da[static_cast<std::size_t>(q)];
                    comm[static_cast<std::size_t>(q)] = (d * rb - rb * d).pruned();
                    for (Eigen::Index o = 0; o < comm[static_cast<std::size_t>(q)].outerSize(); ++o) {
                        for (Sparse::InnerIterator it(comm[static_cast<std::size_t>(q)], o); it; ++it) {
                            row_of.emplace(it.row() * n + it.col(), static_cast<Eigen::Index>(row_of.size()));
                        }
                    }
                }
                if (row_of.empty()) continue;
                RealMatrix rows = RealMatrix::Zero(2 * static_cast<Eigen::Index>(row_of.size()), k1);
                for (Eigen::Index q = 0; q < k1; ++q) {
                    for (Eigen::Index o = 0; o < comm[static_cast<std::size_t>(q)].outerSize(); ++o) {
                        for (Sparse::InnerIterator it(comm[static_cast<std::size_t>(q)], o); it; ++it) {
                            const Eigen::Index row = row_of.at(it.row() * n + it.col());
                            rows(2 * row, q) = it.value().real();
                            rows(2 * row + 1, q) = it.value().imag();
                        }
                    }
                }
                stage2.add_rows(rows);
            }
        }
        const Nullspace ns2 = nullspace(stage2);
        out.gap_ratio = std::min(out.gap_ratio, ns2.gap_ratio);
        coeffs = ns2.basis;
    }

    for (Eigen::Index q = 0; q < coeffs.cols(); ++q) {
        Matrix d = Matrix::Zero(n, n);
        for (Eigen::Index k = 0; k < k1; ++k) {
            const double c = coeffs(k, q);
            if (c != 0.0) d += c * candidates[static_cast<std::size_t>(k)];
        }
        // remove rounding-level anti-Hermitian part
        d = (0.5 * (d + d.adjoint())).eval();
        out.residuals.push_back(residuals_with(t, d, even, act).max());
        out.basis.push_back(std::move(d));
    }
    out.real_dim = static_cast<int>(out.basis.size());
    return out;
}

Matrix project_onto_moduli(const ModuliBasis& m, const Matrix& x) {
    if (x.rows() != m.dim_h || x.cols() != m.dim_h) {
        throw DimensionError("project_onto_moduli: matrix has the wrong size");
    }
    Matrix p = Matrix::Zero(x.rows(), x.cols());
    for (const auto& b : m.basis) {
        const double c = (b.adjoint() * x).trace().real();
        p += c * b;
    }
    return p;
}

}  // namespace finspec
