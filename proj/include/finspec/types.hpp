#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace finspec {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance on matrix entries used by every verification routine
/// unless the caller overrides it.
inline constexpr double kDefaultTolerance = 1e-10;

/// Input data violates a structural invariant (Krajewski data, atlas nerve, ...).
class InvalidData : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Matrix or element has the wrong shape for the object it is applied to.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical precondition (unitarity, self-adjointness, ...) is violated
/// beyond tolerance.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Largest absolute entry of a matrix; zero for empty matrices.
inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

/// Neumaier-compensated summation; the result depends only on the order of
/// the inputs.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace finspec
