#pragma once

// Real-linear algebra helpers: complex matrices viewed as real vectors,
// ranks, ranges and nullspaces via SVD.

#include <limits>
#include <vector>

#include "finspec/types.hpp"

namespace finspec {

/// Relative singular-value cutoff: σ < kRankCutoff·σ_max counts as zero.
inline constexpr double kRankCutoff = 1e-8;

/// [Re vec(X); Im vec(X)] (column-major vec). Isometric for Re Tr(X†Y).
RealVector realify(const Matrix& x);
/// Inverse of realify for square n × n matrices.
Matrix complexify(const RealVector& v, Eigen::Index n);

/// Frobenius-orthonormal real basis of the n × n Hermitian matrices
/// (n² elements: e_kk, (e_kl + e_lk)/√2, i(e_kl − e_lk)/√2 for k < l).
std::vector<Matrix> hermitian_basis(Eigen::Index n);

int numerical_rank(const RealMatrix& m, double rel_cutoff = kRankCutoff);

/// Orthonormal basis (columns) of the column space of m.
RealMatrix range_basis(const RealMatrix& m, double rel_cutoff = kRankCutoff);

/// Incrementally accumulates the rows of a tall real matrix M through
/// repeated Householder QR, keeping only the triangular factor R. M and R
/// have the same singular values and right singular vectors.
class RowCompressor {
public:
    explicit RowCompressor(Eigen::Index cols, Eigen::Index chunk_rows = 0);

    void add_rows(const RealMatrix& rows);
    void add_row_vector(const RealVector& row);

    /// Triangular factor of all rows seen so far (min(rows, cols) × cols).
    RealMatrix factor();
    Eigen::Index cols() const { return cols_; }

private:
    void flush();

    Eigen::Index cols_;
    Eigen::Index chunk_rows_;
    RealMatrix r_;
    RealMatrix pending_;
    Eigen::Index filled_ = 0;
};

struct Nullspace {
    RealMatrix basis;  ///< orthonormal columns
    RealVector singular_values;
    /// Smallest kept σ divided by the largest discarded σ; +inf when one of
    /// the two sets is empty or the discarded values are exactly zero.
    double gap_ratio = std::numeric_limits<double>::infinity();
};

/// Nullspace of the matrix whose rows were fed to `rows`.
Nullspace nullspace(RowCompressor& rows, double rel_cutoff = kRankCutoff);

}  // namespace finspec
