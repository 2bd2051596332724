#pragma once

// Euclidean gamma matrices for flat tori of dimension 1, 2 and 4.
//
// d = 4, "chiral" basis (default):
//   γ^k = [[0, −iσ_k], [iσ_k, 0]] (k = 1,2,3),  γ^4 = [[0, 1], [1, 0]],
//   γ5  = γ^1γ^2γ^3γ^4 = diag(1, 1, −1, −1),
//   C   = diag(iσ_2, −iσ_2), so that J_M = C∘conj satisfies
//   C·conj(γ^μ)·C⁻¹ = −γ^μ, C·conj(C) = −1 and [C, γ5] = 0.
// d = 4, "dirac" basis: every matrix above conjugated by
//   W = (1/√2)[[1, 1], [1, −1]] ⊗ 1_2, with C' = W·C·Wᵀ.
// d = 2: γ^1 = σ_1, γ^2 = σ_2, chirality σ_3, C = iσ_2.
// d = 1: γ^1 = (1), C = (1), no chirality.

#include <optional>
#include <string>
#include <vector>

#include "finspec/types.hpp"

namespace finspec {

struct CliffordData {
    int dimension = 4;
    std::string basis = "chiral";
    std::vector<Matrix> gammas;
    std::optional<Matrix> chirality;
    Matrix charge_conjugation;  ///< C with J_M(ψ) = C·conj(ψ)

    int spinor_dim() const { return gammas.empty() ? 0 : static_cast<int>(gammas.front().rows()); }
};

/// Supported basis names: "chiral" for every dimension, "dirac" for d = 4.
/// Throws InvalidData for unsupported combinations.
CliffordData clifford(int dimension, const std::string& basis = "chiral");

struct CliffordResiduals {
    double anticommutation = 0.0;  ///< max |γ^μγ^ν + γ^νγ^μ − 2δ^{μν}|
    double hermitian = 0.0;
    double chirality = 0.0;        ///< γ5² = 1, γ5 Hermitian, γ5 anticommutes with every γ^μ
    double c_unitary = 0.0;
    double c_gamma = 0.0;          ///< C·conj(γ^μ)·C⁻¹ + γ^μ
    double c_chirality = 0.0;      ///< C·conj(γ5)·C⁻¹ − γ5
    double c_square = 0.0;         ///< C·conj(C) + 1

    double max() const;
};

/// The C relations are those required in d = 4; the d = 1 and d = 2 data
/// violate some of them (c_gamma, c_chirality, c_square) by design.
CliffordResiduals check_clifford(const CliffordData& c);

}  // namespace finspec
