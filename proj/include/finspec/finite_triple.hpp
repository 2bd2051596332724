#pragma once

// Explicit matrix realisations of finite real spectral triples
//
//   A_F = ⊕_i M_{N_i}(C),   H_F = ⊕_{(i,j) ∈ K} M_{N_i,N_j}(C)
//
// built from Krajewski data (summand sizes N_i, a symmetric multiset K of
// index pairs, KO signs and a grading sign per pair slot).
//
// The antilinear real structure is stored as a unitary U with J(v) = U·conj(v),
// so J·X·J* = U·conj(X)·U†. Basis vectors of H_F are ordered
// lexicographically by (slot, row, column), where slots are the elements of K
// sorted by (i, j, copy index); a slot (i, j) holds N_i × N_j matrices,
// vectorised row-major.

#include <optional>
#include <string>
#include <vector>

#include "finspec/ko.hpp"
#include "finspec/types.hpp"

namespace finspec {

/// Combinatorial description of a finite real spectral triple. Summand
/// indices are zero-based.
struct KrajewskiData {
    std::vector<int> dims;                   ///< N_i for i ∈ I
    std::vector<std::pair<int, int>> pairs;  ///< K, repeated for multiplicity
    KOSignature ko;
    std::vector<int> grading;  ///< ±1 per slot in sorted order; empty when KO is odd

    int num_summands() const { return static_cast<int>(dims.size()); }
    int multiplicity(int i, int j) const;
};

/// Throws InvalidData describing the first violated invariant.
void validate(const KrajewskiData& data);

/// One copy H_{ij}^α of M_{N_i,N_j}(C) inside H_F.
struct Slot {
    int i = 0;
    int j = 0;
    int copy = 0;
    int rows = 0;    ///< N_i
    int cols = 0;    ///< N_j
    int offset = 0;  ///< first basis index of the slot
    int partner = 0; ///< index of the slot J maps this one to
    int j_sign = 1;  ///< J(t) = j_sign · t* placed in the partner slot

    int size() const { return rows * cols; }
};

/// Slots of K in canonical order, with offsets and J-partners filled in.
std::vector<Slot> make_slots(const KrajewskiData& data);

/// Element of A_F = ⊕_i M_{N_i}(C): one square block per summand.
struct AlgebraElement {
    std::vector<Matrix> blocks;

    static AlgebraElement zero(const std::vector<int>& dims);
    static AlgebraElement identity(const std::vector<int>& dims);
    /// Matrix unit e_{kl} in summand `summand`.
    static AlgebraElement unit(const std::vector<int>& dims, int summand, int k, int l);

    AlgebraElement adjoint() const;
    AlgebraElement operator*(const AlgebraElement& other) const;
    AlgebraElement operator+(const AlgebraElement& other) const;
    AlgebraElement operator*(cplx s) const;

    /// Block-diagonal matrix of size Σ N_i.
    Matrix to_block_diagonal() const;
    static AlgebraElement from_block_diagonal(const Matrix& m, const std::vector<int>& dims);
};

/// Throws DimensionError unless `a` has one N_i × N_i block per summand.
void check_shape(const AlgebraElement& a, const std::vector<int>& dims);

/// Largest entry of u·u† − 1 over all blocks.
double unitarity_residual(const AlgebraElement& u);
/// Largest entry of x + x† over all blocks.
double anti_hermiticity_residual(const AlgebraElement& x);

class FiniteTriple {
public:
    KrajewskiData data;
    std::vector<Slot> slots;
    int dim_h = 0;
    Matrix j_matrix;  ///< U with J(v) = U·conj(v)
    Matrix gamma;     ///< grading (identity for odd KO-dimension)
    Matrix dirac;     ///< D_F, Hermitian
    /// Optional unitary W: every structure matrix is W·(standard form)·W†.
    std::optional<Matrix> frame;

    bool even() const { return data.ko.even(); }
    const KOSignature& ko() const { return data.ko; }

    Matrix left_action(const AlgebraElement& a) const;
    /// J·X·J* for a linear operator X on H_F.
    Matrix conjugate_by_j(const Matrix& x) const;
    /// J·a·J* (the opposite-algebra action of a*).
    Matrix right_action(const AlgebraElement& b) const;

    /// Matrix units of every summand, the generator set for order-zero and
    /// first-order checks.
    std::vector<AlgebraElement> generators() const;

    /// Same triple with Dirac operator replaced.
    FiniteTriple with_dirac(const Matrix& d) const;
};

/// Explicit realisation of `data`. D defaults to zero.
FiniteTriple build_triple(const KrajewskiData& data, const std::optional<Matrix>& dirac = std::nullopt);

/// Unitary change of H_F-basis: all structure matrices conjugated by W.
FiniteTriple change_frame(const FiniteTriple& t, const Matrix& w);

struct AxiomCheck {
    std::string name;
    double residual = 0.0;
    bool passed = false;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    double tolerance = kDefaultTolerance;

    bool passed() const;
    const AxiomCheck& at(const std::string& name) const;
};

/// Checks: j_unitary, J2, JD, Jgamma, gamma2, gamma_hermitian, gamma_algebra,
/// gammaD, D_hermitian, homomorphism, order_zero, first_order, faithful.
/// Grading checks are skipped for odd KO-dimension. The faithfulness residual
/// is max(0, 1 − σ_min) of the left action on an orthonormal algebra basis.
AxiomReport verify_axioms(const FiniteTriple& t, double tol = kDefaultTolerance);

/// Classes of the relation generated by i ~ j whenever m_ij > 0 (i ≠ j).
/// Classes are sorted by their smallest member.
std::vector<std::vector<int>> connected_components(const KrajewskiData& data);

struct CentralSubalgebra {
    std::vector<AlgebraElement> basis;  ///< one ⊕_{i∈[k]} 1_{N_i} per class
    std::vector<double> residuals;      ///< ‖bJ − Jb*‖ per basis element
};

/// Basis of (A_F)_{J_F}.
CentralSubalgebra aj_basis(const FiniteTriple& t, double tol = kDefaultTolerance);

struct GaugeStructure {
    std::vector<std::vector<int>> components;
    int dim_u_af = 0;
    int dim_aj = 0;
    int gauge_lie_dim = 0;
    int tau_rank = 0;  ///< rank of τ on an anti-Hermitian basis, computed independently
};

GaugeStructure gauge_structure(const FiniteTriple& t, double tol = kDefaultTolerance);

/// Real basis of u(A_F) = anti-Hermitian algebra elements, orthonormal under
/// Re Tr(x†y) summed over blocks.
std::vector<AlgebraElement> anti_hermitian_basis(const std::vector<int>& dims);

/// τ(x) = x + J x J* on H_F.
Matrix tau(const FiniteTriple& t, const AlgebraElement& x, double tol = kDefaultTolerance);

/// Orthonormal (Re Tr) basis of the image of τ, i.e. of the gauge Lie algebra
/// as a real subspace of u(H_F).
std::vector<Matrix> gauge_algebra_basis(const FiniteTriple& t);

/// u·J·u·J*. Throws PreconditionError if u is not unitary within tol.
Matrix gauge_element(const FiniteTriple& t, const AlgebraElement& u, double tol = kDefaultTolerance);

struct UnimodularSplit {
    AlgebraElement v;  ///< unimodular on every class
    AlgebraElement w;  ///< in U((A_F)_{J_F})
};

/// u = v·w where w_{[i]} = (det_{[i]} u_{[i]})^{1/N_{[i]}} on each class; the
/// determinant is taken on the part of H_F where the class acts
/// (N_{[i]} = its dimension), principal branch, with arg = −π mapped to +π.
UnimodularSplit unimodular_decompose(const FiniteTriple& t, const AlgebraElement& u);

/// det_{[i]} of the left action of u on H_{[i]} and the dimension N_{[i]}.
std::vector<std::pair<cplx, int>> class_determinants(const FiniteTriple& t, const AlgebraElement& u);

}  // namespace finspec
