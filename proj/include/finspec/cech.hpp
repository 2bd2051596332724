#pragma once

// Sampled Čech data of principal bundles: transition functions on a finite
// nerve, evaluated at named sample points of the overlaps.
//
// Group elements are unitary matrices. For atlases valued in U(A_F) they are
// block-diagonal of size Σ N_i, one block per summand. A transition g_ij that
// is not stored explicitly is read as g_ji⁻¹ = g_ji†. Every residual is the
// largest absolute matrix entry of the defect.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finspec/finite_triple.hpp"

namespace finspec {

struct CechSample {
    std::string point;
    Matrix g;
    std::vector<Matrix> dg;  ///< ∂g/∂x^μ per direction; empty when not supplied
};

struct TripleOverlap {
    int i = 0;
    int j = 0;
    int k = 0;
    std::vector<std::string> points;
};

struct CechAtlas {
    int num_patches = 0;
    int group_dim = 0;  ///< size of the unitary matrices
    std::map<std::pair<int, int>, std::vector<CechSample>> overlaps;
    std::vector<TripleOverlap> triple_overlaps;
    /// ω_i at a point: connections[i][point][μ], anti-Hermitian.
    std::map<int, std::map<std::string, std::vector<Matrix>>> connections;

    /// g_ij at `point`, falling back to g_ji†. nullopt when neither is sampled.
    std::optional<Matrix> transition(int i, int j, const std::string& point) const;
    /// As `transition`, but throws InvalidData naming the missing sample.
    Matrix require(int i, int j, const std::string& point) const;
};

/// Shapes, patch indices, unitarity of every sample and g_ji = g_ij⁻¹ where
/// both directions are stored. Throws InvalidData.
void validate(const CechAtlas& atlas, double tol = kDefaultTolerance);

struct CechCheck {
    std::string name;
    double residual = 0.0;
    std::string worst;  ///< location of the largest residual
    int samples = 0;
    bool passed = true;
};

struct CechReport {
    std::vector<CechCheck> checks;
    double tolerance = kDefaultTolerance;

    bool passed() const;
    double max_residual() const;
};

/// max ‖g_ij g_jk g_ki − 1‖ over triple-overlap samples.
CechReport verify_cocycle(const CechAtlas& atlas, double tol = kDefaultTolerance);

/// Per-patch, per-point group elements g_i(x).
using PatchField = std::map<int, std::map<std::string, Matrix>>;

/// Residual of g′_ij = g_i⁻¹·g_ij·g_j on every overlap sample of a1. The two
/// atlases must have the same overlaps and sample points.
CechReport atlases_equivalent(const CechAtlas& a1, const CechAtlas& a2, const PatchField& g,
                              double tol = kDefaultTolerance);

/// Pointwise u ↦ u·J·u·J* of a U(A_F)-valued atlas. Derivative samples and
/// connections are not carried over. Throws PreconditionError for a
/// non-unitary sample.
CechAtlas quotient_cocycle(const CechAtlas& atlas, const FiniteTriple& t, double tol = kDefaultTolerance);

/// Cocycle check of the candidate plus the samplewise distance between
/// quotient_cocycle(candidate) and the target.
CechReport verify_lift(const CechAtlas& candidate, const CechAtlas& target, const FiniteTriple& t,
                       double tol = kDefaultTolerance);

/// Residual of ω_j = g_ij⁻¹dg_ij + g_ij⁻¹ω_i g_ij per overlap sample and
/// direction. Samples of stored overlaps need dg and both connections.
CechReport verify_connection_compat(const CechAtlas& atlas, double tol = kDefaultTolerance);

}  // namespace finspec
