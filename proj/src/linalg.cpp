#include "finspec/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace finspec {

RealVector realify(const Matrix& x) {
    const Eigen::Index n = x.size();
    RealVector v(2 * n);
    const auto flat = x.reshaped();
    v.head(n) = flat.real();
    v.tail(n) = flat.imag();
    return v;
}

Matrix complexify(const RealVector& v, Eigen::Index n) {
    if (v.size() != 2 * n * n) throw DimensionError("complexify: vector length does not match matrix size");
    Matrix m(n, n);
    m.reshaped().real() = v.head(n * n);
    m.reshaped().imag() = v.tail(n * n);
    return m;
}

std::vector<Matrix> hermitian_basis(Eigen::Index n) {
    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(n * n));
    const double r2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index k = 0; k < n; ++k) {
        Matrix e = Matrix::Zero(n, n);
        e(k, k) = 1.0;
        basis.push_back(std::move(e));
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = k + 1; l < n; ++l) {
            Matrix re = Matrix::Zero(n, n);
            re(k, l) = r2;
            re(l, k) = r2;
            basis.push_back(std::move(re));
            Matrix im = Matrix::Zero(n, n);
            im(k, l) = cplx(0.0, r2);
            im(l, k) = cplx(0.0, -r2);
            basis.push_back(std::move(im));
        }
    }
    return basis;
}

int numerical_rank(const RealMatrix& m, double rel_cutoff) {
    if (m.size() == 0) return 0;
    const RealVector s = Eigen::JacobiSVD<RealMatrix>(m).singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    return static_cast<int>((s.array() >= rel_cutoff * s(0)).count());
}

RealMatrix range_basis(const RealMatrix& m, double rel_cutoff) {
    if (m.size() == 0) return RealMatrix(m.rows(), 0);
    Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU);
    const RealVector s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return RealMatrix(m.rows(), 0);
    const auto rank = static_cast<Eigen::Index>((s.array() >= rel_cutoff * s(0)).count());
    return svd.matrixU().leftCols(rank);
}

RowCompressor::RowCompressor(Eigen::Index cols, Eigen::Index chunk_rows)
    : cols_(cols), chunk_rows_(chunk_rows > 0 ? chunk_rows : std::max<Eigen::Index>(4 * cols, 64)), r_(0, cols),
      pending_(chunk_rows_, cols) {}

void RowCompressor::add_rows(const RealMatrix& rows) {
    if (rows.cols() != cols_) throw DimensionError("RowCompressor: row width mismatch");
    for (Eigen::Index k = 0; k < rows.rows(); ++k) {
        if (rows.row(k).cwiseAbs().maxCoeff() == 0.0) continue;
        pending_.row(filled_++) = rows.row(k);
        if (filled_ == chunk_rows_) flush();
    }
}

void RowCompressor::add_row_vector(const RealVector& row) {
    if (row.size() != cols_) throw DimensionError("RowCompressor: row width mismatch");
    if (row.cwiseAbs().maxCoeff() == 0.0) return;
    pending_.row(filled_++) = row.transpose();
    if (filled_ == chunk_rows_) flush();
}

void RowCompressor::flush() {
    if (filled_ == 0) return;
    RealMatrix stacked(r_.rows() + filled_, cols_);
    stacked.topRows(r_.rows()) = r_;
    stacked.bottomRows(filled_) = pending_.topRows(filled_);
    filled_ = 0;
    if (stacked.rows() <= cols_) {
        r_ = std::move(stacked);
        return;
    }
    Eigen::HouseholderQR<RealMatrix> qr(stacked);
    r_ = qr.matrixQR().topRows(cols_).triangularView<Eigen::Upper>();
}

RealMatrix RowCompressor::factor() {
    flush();
    return r_;
}

Nullspace nullspace(RowCompressor& rows, double rel_cutoff) {
    const Eigen::Index n = rows.cols();
    const RealMatrix r = rows.factor();
    Nullspace ns;
    if (n == 0) {
        ns.basis = RealMatrix(0, 0);
        return ns;
    }
    if (r.rows() == 0) {
        ns.basis = RealMatrix::Identity(n, n);
        return ns;
    }
    Eigen::JacobiSVD<RealMatrix> svd(r, Eigen::ComputeFullV);
    const RealVector s = svd.singularValues();
    ns.singular_values = s;
    const double smax = s.size() > 0 ? s(0) : 0.0;
    // singular values beyond min(rows, cols) are exactly zero
    std::vector<Eigen::Index> null_cols;
    double smallest_kept = std::numeric_limits<double>::infinity();
    double largest_dropped = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double sk = k < s.size() ? s(k) : 0.0;
        if (smax > 0.0 && sk >= rel_cutoff * smax) {
            smallest_kept = std::min(smallest_kept, sk);
        } else {
            null_cols.push_back(k);
            largest_dropped = std::max(largest_dropped, sk);
        }
    }
    ns.basis = RealMatrix(n, static_cast<Eigen::Index>(null_cols.size()));
    for (std::size_t k = 0; k < null_cols.size(); ++k) {
        ns.basis.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(null_cols[k]);
    }
    if (!null_cols.empty() && std::isfinite(smallest_kept) && largest_dropped > 0.0) {
        ns.gap_ratio = smallest_kept / largest_dropped;
    }
    return ns;
}

}  // namespace finspec
