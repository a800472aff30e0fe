#pragma once

#include <cstdint>
#include <random>

#include "jacobi/field_space.hpp"

namespace jacobi {

using Rng = std::mt19937_64;

/// Per-trial seed derived from a root seed (splitmix64 of root ^ trial).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t trial);

/// Random symmetric m x m matrix with N(0, 1) entries, symmetrized.
Matrix random_symmetric(int m, Rng& rng);

/// R(t) = C0 + sum_j (A_j cos(j w t) + B_j sin(j w t)) with symmetric
/// coefficients, scaled so that the sum of spectral norms equals
/// `norm_bound`; hence ||R(t)|| <= norm_bound. Periodic with 2 pi / w.
SystemPtr random_trig_system(int m, Rng& rng, double norm_bound = 9.0, int harmonics = 2,
                             double frequency = 1.0);

/// R(t) = delta I + B(t) B(t)^T with B a trigonometric polynomial, so
/// R >= delta. ||B B^T|| <= bump_bound. Periodic with 2 pi / w.
SystemPtr random_positive_system(int m, double delta, Rng& rng, double bump_bound = 3.0,
                                 int harmonics = 2, double frequency = 1.0);

/// Orthonormal isotropic 2m x d frame by symplectic Gram–Schmidt from random
/// Gaussian vectors. `seed` (2m x j, orthonormal isotropic) is kept as the
/// first j columns.
Matrix random_isotropic_frame(int m, int d, Rng& rng, const Matrix& seed = Matrix());

FieldSubspace random_lagrangian(const SystemPtr& system, double anchor, Rng& rng);

/// Random Lagrangian sharing a random `shared`-dimensional subspace with l.
FieldSubspace random_lagrangian_sharing(const FieldSubspace& l, int shared, Rng& rng);

/// Random d-dimensional (isotropic) subspace of l.
FieldSubspace random_subspace_of(const FieldSubspace& l, int d, Rng& rng);

}  // namespace jacobi
