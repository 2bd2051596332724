#include "finspec/random.hpp"

#include <cmath>

namespace finspec {

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(r, c) = {re, im};
        }
    }
    return m;
}

Vector random_vector(Eigen::Index n, Rng& rng) { return random_gaussian(n, 1, rng).col(0); }

Matrix random_hermitian(Eigen::Index n, Rng& rng) {
    const Matrix g = random_gaussian(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
    const Matrix g = random_gaussian(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

AlgebraElement random_algebra_element(const std::vector<int>& dims, Rng& rng) {
    AlgebraElement a;
    for (int n : dims) a.blocks.push_back(random_gaussian(n, n, rng));
    return a;
}

AlgebraElement random_unitary_element(const std::vector<int>& dims, Rng& rng) {
    AlgebraElement u;
    for (int n : dims) u.blocks.push_back(random_unitary(n, rng));
    return u;
}

AlgebraElement random_anti_hermitian_element(const std::vector<int>& dims, Rng& rng, double scale) {
    AlgebraElement x;
    for (int n : dims) {
        Matrix h = random_hermitian(n, rng);
        const double norm = h.norm();
        if (norm > 0.0) h /= norm;
        x.blocks.push_back(cplx{0.0, scale} * h);
    }
    return x;
}

}  // namespace finspec
