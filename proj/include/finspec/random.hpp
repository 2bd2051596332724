#pragma once

// Seeded random matrices for property checks. Results depend only on the
// seed and the call sequence.

#include <random>
#include <vector>

#include "finspec/finite_triple.hpp"

namespace finspec {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Vector random_vector(Eigen::Index n, Rng& rng);
Matrix random_hermitian(Eigen::Index n, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Matrix random_unitary(Eigen::Index n, Rng& rng);

AlgebraElement random_algebra_element(const std::vector<int>& dims, Rng& rng);
AlgebraElement random_unitary_element(const std::vector<int>& dims, Rng& rng);
/// Anti-Hermitian element with Frobenius-normalised blocks scaled by `scale`.
AlgebraElement random_anti_hermitian_element(const std::vector<int>& dims, Rng& rng, double scale = 1.0);

}  // namespace finspec
